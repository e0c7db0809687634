"""Exact two-phase simplex over the rationals with Bland's rule."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LPResult", "solve_standard", "linprog"]

Row = Sequence[Fraction | int]


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    piv = T[r][c]
    row = T[r]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    for k, other in enumerate(T):
        if k != r and other[c] != 0:
            f = other[c]
            T[k] = [a - f * b for a, b in zip(other, row)]


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimise the objective held in the last row; False if unbounded."""
    m = len(basis)
    obj = T[m]
    while True:
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for r in range(m):
            a = T[r][col]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return False
        r = best[1]
        _pivot(T, r, col)
        basis[r] = col
        obj = T[m]


def solve_standard(A: Sequence[Row], b: Row, c: Row) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    m, n = len(A), len(c)
    rows = []
    for a, bi in zip(A, b):
        a = [Fraction(v) for v in a]
        bi = Fraction(bi)
        if bi < 0:
            a, bi = [-v for v in a], -bi
        rows.append((a, bi))
    T = [a + [Fraction(int(k == r)) for k in range(m)] + [bi]
         for r, (a, bi) in enumerate(rows)]
    basis = [n + r for r in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for r in range(m):
        phase1 = [p - v for p, v in zip(phase1, T[r])]
    for r in range(m):
        phase1[n + r] = Fraction(0)
    T.append(phase1)
    _run(T, basis, n + m)
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis, dropping redundant rows
    r = 0
    while r < len(basis):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, r, col)
            basis[r] = col
        r += 1
    m = len(basis)
    T = [row[:n] + [row[-1]] for row in T[:m]]
    cost = [Fraction(v) for v in c] + [Fraction(0)]
    for r in range(m):
        f = cost[basis[r]]
        if f != 0:
            cost = [a - f * t for a, t in zip(cost, T[r])]
    T.append(cost)
    if not _run(T, basis, n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for r, j in enumerate(basis):
        x[j] = T[r][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)


def linprog(c: Row, ge: Sequence[tuple[Row, Fraction | int]] = (),
            eq: Sequence[tuple[Row, Fraction | int]] = ()) -> LPResult:
    """Minimise ``c.x`` over free ``x`` with rows ``a.x >= b`` and ``a.x = b``."""
    d = len(c)
    k = len(ge)
    A, b = [], []
    for r, (a, bi) in enumerate(ge):
        A.append(list(a) + [-v for v in a] + [-int(s == r) for s in range(k)])
        b.append(bi)
    for a, bi in eq:
        A.append(list(a) + [-v for v in a] + [0] * k)
        b.append(bi)
    cost = list(c) + [-v for v in c] + [0] * k
    res = solve_standard(A, b, cost)
    if res.status != "optimal":
        return res
    x = [res.x[j] - res.x[d + j] for j in range(d)]
    return LPResult("optimal", x, res.value)
