"""Reduced words in the symmetric group S_{n+1}.

A word is a tuple of letters ``i`` standing for the simple transposition
``s_i = (i, i+1)``.  Words compose left to right as functions, so the
permutation of ``(i1, ..., il)`` is ``s_i1 o ... o s_il`` written in one-line
notation.  Read geometrically, ``permutation_of(word)[h-1]`` is the line that
ends at height ``h`` once all crossings of the word have been drawn.

>>> permutation_of((1, 2, 1), 2)
(3, 2, 1)
>>> is_reduced((1, 2, 1), 2), is_reduced((1, 1), 2)
(True, False)
>>> extend_to_longest((1, 2, 3, 2, 1), 3)
(1, 2, 3, 2, 1, 2)
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

__all__ = [
    "Move",
    "permutation_of",
    "inversions",
    "length",
    "is_reduced",
    "validate_word",
    "longest_element",
    "initial_word",
    "local_moves",
    "apply_move",
    "commutation_equivalent",
    "extend_to_longest",
    "is_prefix_extension",
    "enumerate_reduced_words",
    "random_braid_walk",
    "sample_longest_words",
    "braid_move_path",
    "iter_words_of_all_perms",
    "ENUMERATION_LIMIT",
]

Word = tuple[int, ...]
Perm = tuple[int, ...]

# Reduced words of w0 grow super-exponentially (S7 already has ~10^8).
ENUMERATION_LIMIT = 6


def validate_word(word: Sequence[int], n: int) -> Word:
    """Return ``word`` as a tuple, raising ``ValueError`` on bad letters."""
    if n < 1:
        raise ValueError(f"rank must be positive, got n={n}")
    out = tuple(int(a) for a in word)
    for a in out:
        if not 1 <= a <= n:
            raise ValueError(f"letter {a} outside 1..{n}")
    return out


def permutation_of(word: Sequence[int], n: int) -> Perm:
    """One-line notation of the product of the letters of ``word``."""
    perm = list(range(1, n + 2))
    for a in validate_word(word, n):
        perm[a - 1], perm[a] = perm[a], perm[a - 1]
    return tuple(perm)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm))
               if perm[x] > perm[y])


def length(perm: Sequence[int]) -> int:
    """Coxeter length, i.e. the number of inversions."""
    return inversions(perm)


def is_reduced(word: Sequence[int], n: int) -> bool:
    return len(word) == inversions(permutation_of(word, n))


def longest_element(n: int) -> Perm:
    return tuple(range(n + 1, 0, -1))


def initial_word(n: int) -> Word:
    """The word ``s1 s2s1 s3s2s1 ... sn...s1`` for the longest element.

    >>> initial_word(3)
    (1, 2, 1, 3, 2, 1)
    """
    return tuple(a for block in range(1, n + 1) for a in range(block, 0, -1))


@dataclass(frozen=True)
class Move:
    """A local move at 1-based ``position``.

    ``kind`` is ``"braid"`` for ``i, i+-1, i -> i+-1, i, i+-1`` starting at
    ``position`` or ``"commute"`` for swapping two distant letters.
    """

    kind: str
    position: int

    def span(self) -> int:
        return 3 if self.kind == "braid" else 2


def local_moves(word: Sequence[int]) -> list[Move]:
    """All braid and commutation moves applicable to ``word``."""
    moves = []
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            moves.append(Move("commute", p + 1))
        elif abs(a - b) == 1 and p + 2 < len(word) and word[p + 2] == a:
            moves.append(Move("braid", p + 1))
    return moves


def apply_move(word: Sequence[int], move: Move) -> Word:
    p = move.position - 1
    w = list(word)
    if move.kind == "commute":
        if abs(w[p] - w[p + 1]) <= 1:
            raise ValueError(f"letters {w[p]}, {w[p + 1]} do not commute")
        w[p], w[p + 1] = w[p + 1], w[p]
    elif move.kind == "braid":
        a, b = w[p], w[p + 1]
        if abs(a - b) != 1 or w[p + 2] != a:
            raise ValueError(f"no braid pattern at position {move.position}")
        w[p:p + 3] = [b, a, b]
    else:
        raise ValueError(f"unknown move kind {move.kind!r}")
    return tuple(w)


def commutation_equivalent(u: Sequence[int], v: Sequence[int]) -> bool:
    """True if ``u`` and ``v`` differ only by commuting distant letters.

    Two words are commutation equivalent exactly when, for every pair of
    non-commuting letters, the interleaving of their occurrences agrees.
    """
    if sorted(u) != sorted(v):
        return False
    letters = sorted(set(u))
    for a in letters:
        for b in letters:
            if b < a or abs(a - b) > 1:
                continue
            if [x for x in u if x in (a, b)] != [x for x in v if x in (a, b)]:
                return False
    return True


def _right_ascents(perm: Perm) -> list[int]:
    return [i for i in range(1, len(perm)) if perm[i - 1] < perm[i]]


def extend_to_longest(word: Sequence[int], n: int) -> Word:
    """Append letters until the word represents the longest element.

    Among the letters that increase the length the largest one is appended
    at each step, which is deterministic and keeps the result reduced.
    """
    if not is_reduced(word, n):
        raise ValueError(f"word {tuple(word)} is not reduced")
    out = list(word)
    perm = list(permutation_of(word, n))
    while True:
        ascents = _right_ascents(tuple(perm))
        if not ascents:
            return tuple(out)
        a = max(ascents)
        perm[a - 1], perm[a] = perm[a], perm[a - 1]
        out.append(a)


def is_prefix_extension(word: Sequence[int], longer: Sequence[int], n: int) -> bool:
    """True if ``longer`` is a reduced word of w0 starting with ``word``."""
    return (tuple(longer[:len(word)]) == tuple(word) and is_reduced(longer, n)
            and permutation_of(longer, n) == longest_element(n))


def enumerate_reduced_words(perm: Sequence[int]) -> list[Word]:
    """Every reduced word of ``perm``, sorted lexicographically.

    >>> len(enumerate_reduced_words((4, 3, 2, 1)))
    16
    """
    perm = tuple(perm)
    n = len(perm) - 1
    if sorted(perm) != list(range(1, n + 2)):
        raise ValueError(f"{perm} is not a permutation")
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"refusing to enumerate reduced words for n={n} > "
                         f"{ENUMERATION_LIMIT}; sample with random_braid_walk")
    memo: dict[Perm, list[Word]] = {}

    def words_of(p: Perm) -> list[Word]:
        if p in memo:
            return memo[p]
        out: list[Word] = []
        descents = [i for i in range(1, n + 1) if p[i - 1] > p[i]]
        if not descents:
            out.append(())
        for i in descents:
            q = list(p)
            q[i - 1], q[i] = q[i], q[i - 1]
            out.extend(w + (i,) for w in words_of(tuple(q)))
        memo[p] = out
        return out

    return sorted(words_of(perm))


def random_braid_walk(word: Sequence[int], steps: int,
                      rng: random.Random) -> tuple[Word, list[Move]]:
    """Walk ``steps`` random local moves starting at ``word``."""
    cur = tuple(word)
    path: list[Move] = []
    for _ in range(steps):
        moves = local_moves(cur)
        if not moves:
            break
        mv = rng.choice(moves)
        cur = apply_move(cur, mv)
        path.append(mv)
    return cur, path


def sample_longest_words(n: int, count: int, seed: int = 0,
                         steps: int | None = None) -> list[Word]:
    """``count`` distinct reduced words of w0 reached by seeded random walks."""
    rng = random.Random(seed)
    steps = steps if steps is not None else 4 * n * (n + 1)
    start = initial_word(n)
    seen: list[Word] = []
    attempts = 0
    while len(seen) < count:
        attempts += 1
        if attempts > 50 * count:
            raise RuntimeError(f"could not find {count} distinct words for n={n}")
        w, _ = random_braid_walk(start, steps, rng)
        if w not in seen:
            seen.append(w)
    return seen


def braid_move_path(start: Sequence[int], goal: Sequence[int],
                    limit: int = 2_000_000) -> list[Move]:
    """Shortest sequence of local moves turning ``start`` into ``goal``."""
    start, goal = tuple(start), tuple(goal)
    if len(start) != len(goal):
        raise ValueError("words have different lengths")
    prev: dict[Word, tuple[Word, Move] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            path = []
            while prev[cur] is not None:
                before, mv = prev[cur]
                path.append(mv)
                cur = before
            return path[::-1]
        for mv in local_moves(cur):
            nxt = apply_move(cur, mv)
            if nxt not in prev:
                prev[nxt] = (cur, mv)
                if len(prev) > limit:
                    raise RuntimeError("move search exceeded its limit")
                queue.append(nxt)
    raise ValueError(f"{goal} is not reachable from {start} by local moves")


def iter_words_of_all_perms(n: int) -> Iterator[tuple[Perm, Word]]:
    """Yield ``(perm, word)`` for every reduced word of every perm of S_{n+1}."""
    from itertools import permutations

    for perm in sorted(permutations(range(1, n + 2))):
        for w in enumerate_reduced_words(perm):
            yield perm, w
