"""Fourier-Motzkin elimination that remembers how each row was derived.

Rows are ``(coeffs, rhs, history)`` for ``coeffs . x >= rhs``; ``history``
maps original row indices to the nonnegative multipliers that produce it.
Rows whose history is larger than the number of eliminated variables plus
one are dropped (Chernikov's rule); they are implied by the others.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

__all__ = ["FMOverflow", "eliminate_all", "back_substitute"]

FRow = tuple[tuple[Fraction, ...], Fraction, dict[int, Fraction]]


class FMOverflow(RuntimeError):
    """Raised when elimination produces more rows than allowed."""


def _normalise(row: FRow) -> FRow:
    a, b, hist = row
    scale = next((abs(v) for v in a if v != 0), abs(b) or Fraction(1))
    if scale == 1:
        return row
    return (tuple(v / scale for v in a), b / scale, {k: v / scale for k, v in hist.items()})


def _choose(rows: list[FRow], remaining: list[int]) -> int:
    best = None
    for j in remaining:
        pos = sum(1 for a, _, _ in rows if a[j] > 0)
        neg = sum(1 for a, _, _ in rows if a[j] < 0)
        cost = pos * neg - pos - neg
        if best is None or cost < best[0]:
            best = (cost, j)
    return best[1]


def eliminate_all(rows: Sequence[FRow], max_rows: int = 20000):
    """Eliminate every variable.

    Returns ``(stages, order, contradiction)``: ``stages[k]`` is the system
    before the ``k``-th elimination of variable ``order[k]``, and
    ``contradiction`` is a derived row ``0 >= positive`` if one appeared.
    """
    if not rows:
        return [], [], None
    dim = len(rows[0][0])
    current = [_normalise(r) for r in rows]
    remaining = list(range(dim))
    stages: list[list[FRow]] = []
    order: list[int] = []
    for step in range(dim):
        for r in current:
            if all(v == 0 for v in r[0]) and r[1] > 0:
                return stages, order, r
        j = _choose(current, remaining)
        stages.append(current)
        order.append(j)
        remaining.remove(j)
        pos = [r for r in current if r[0][j] > 0]
        neg = [r for r in current if r[0][j] < 0]
        nxt: dict[tuple, FRow] = {}
        for r in current:
            if r[0][j] == 0:
                _keep(nxt, r)
        for ap, bp, hp in pos:
            for an, bn, hn in neg:
                support = hp.keys() | hn.keys()
                if len(support) > step + 2:
                    continue
                fp, fn = -an[j], ap[j]
                a = tuple(fp * x + fn * y for x, y in zip(ap, an))
                b = fp * bp + fn * bn
                hist = {k: fp * hp.get(k, 0) + fn * hn.get(k, 0) for k in support}
                _keep(nxt, _normalise((a, b, hist)))
        current = [r for r in nxt.values()
                   if not (all(v == 0 for v in r[0]) and r[1] <= 0)]
        if len(current) > max_rows:
            raise FMOverflow(f"{len(current)} rows after eliminating {step + 1} variables")
    for r in current:
        if r[1] > 0:
            return stages, order, r
    stages.append(current)
    return stages, order, None


def _keep(store: dict, row: FRow) -> None:
    key = (row[0], row[1])
    old = store.get(key)
    if old is None or len(row[2]) < len(old[2]):
        store[key] = row


def back_substitute(stages: list[list[FRow]], order: list[int], dim: int) -> list[Fraction]:
    """A point satisfying the first stage, built from the last variable back."""
    x: dict[int, Fraction] = {}
    for k in range(len(order) - 1, -1, -1):
        j = order[k]
        lo, hi = None, None
        for a, b, _ in stages[k]:
            if a[j] == 0:
                continue
            rest = b - sum(a[i] * x[i] for i in x)
            bound = rest / a[j]
            if a[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        x[j] = _pick(lo, hi)
    return [x.get(j, Fraction(0)) for j in range(dim)]


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """A simple value in ``[lo, hi]``, preferring small integers."""
    if lo is not None and hi is not None and lo > hi:
        raise ArithmeticError("empty interval during back substitution")
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        c = Fraction(-(-lo.numerator // lo.denominator))
        return c if hi is None or c <= hi else lo
    c = Fraction(hi.numerator // hi.denominator)
    return c if lo is None or c >= lo else hi
