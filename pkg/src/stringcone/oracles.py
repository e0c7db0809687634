"""Independent dimension counts for representations of SL_{n+1}.

Weights are given in fundamental-weight coordinates ``(l_1, ..., l_n)``.
Each function here uses its own method so the polytope counts can be checked
against more than one source.

>>> weyl_dim((1, 1))
8
>>> gt_count((1, 1))
8
>>> demazure_dim((1,), (1,), 1)
2
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

from .words import validate_word

__all__ = ["weyl_dim", "gt_count", "demazure_character", "demazure_dim", "partition_of"]


def _check_weight(weight: Sequence[int]) -> tuple[int, ...]:
    weight = tuple(int(x) for x in weight)
    if not weight or any(x < 0 for x in weight):
        raise ValueError(f"weight must be dominant and nonempty, got {weight}")
    return weight


def partition_of(weight: Sequence[int]) -> tuple[int, ...]:
    """Partition with ``n+1`` parts, the last one zero."""
    weight = _check_weight(weight)
    return tuple(sum(weight[k:]) for k in range(len(weight))) + (0,)


def weyl_dim(weight: Sequence[int]) -> int:
    """Weyl dimension formula as a product over positive roots."""
    weight = _check_weight(weight)
    n = len(weight)
    num = Fraction(1)
    for i in range(n):
        for j in range(i, n):
            num *= Fraction(sum(weight[i:j + 1]) + (j - i + 1), j - i + 1)
    assert num.denominator == 1
    return int(num)


def gt_count(weight: Sequence[int]) -> int:
    """Number of Gelfand-Tsetlin patterns with top row ``partition_of(weight)``."""
    top = partition_of(weight)

    @lru_cache(maxsize=None)
    def count(row: tuple[int, ...]) -> int:
        if len(row) == 1:
            return 1
        total = 0
        for below in _interlacing(row):
            total += count(below)
        return total

    return count(top)


def _interlacing(row: tuple[int, ...]):
    ranges = [range(row[k + 1], row[k] + 1) for k in range(len(row) - 1)]

    def rec(k, acc):
        if k == len(ranges):
            yield tuple(acc)
            return
        for v in ranges[k]:
            acc.append(v)
            yield from rec(k + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _demazure_operator(char: dict[tuple[int, ...], int], i: int) -> dict[tuple[int, ...], int]:
    """Isobaric divided difference for the simple root ``e_i - e_{i+1}``."""
    out: dict[tuple[int, ...], int] = {}
    for exp, mult in char.items():
        d = exp[i - 1] - exp[i]
        if d >= 0:
            shifts, sign = range(0, d + 1), 1
        elif d == -1:
            continue
        else:
            shifts, sign = range(-1, d, -1), -1
        for t in shifts:
            e = list(exp)
            e[i - 1] -= t
            e[i] += t
            key = tuple(e)
            out[key] = out.get(key, 0) + sign * mult
    return {k: v for k, v in out.items() if v}


def demazure_character(word: Sequence[int], weight: Sequence[int], n: int) -> dict[tuple[int, ...], int]:
    """Character of the Demazure module of ``word`` as exponent -> multiplicity.

    The operators compose like the letters, so the last letter acts first on
    the highest weight monomial.
    """
    word = validate_word(word, n)
    weight = _check_weight(weight)
    if len(weight) != n:
        raise ValueError(f"weight {weight} has {len(weight)} entries, expected {n}")
    char = {partition_of(weight): 1}
    for i in reversed(word):
        char = _demazure_operator(char, i)
    return char


def demazure_dim(word: Sequence[int], weight: Sequence[int], n: int) -> int:
    return sum(demazure_character(word, weight, n).values())
