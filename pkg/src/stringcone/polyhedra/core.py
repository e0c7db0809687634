"""Exact polyhedral tools: Farkas implication, cone equality, unimodularity
and lattice points of bounded slices."""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .fourier_motzkin import FMOverflow, back_substitute, eliminate_all
from .simplex import linprog, solve_standard

__all__ = [
    "HSystem",
    "Implication",
    "implies",
    "cones_equal",
    "contains_point",
    "determinant",
    "is_unimodular",
    "inverse",
    "transpose",
    "bounding_box",
    "lattice_points",
    "FM_DIM_LIMIT",
]

Vector = tuple[Fraction | int, ...]

# Above this dimension Fourier-Motzkin tends to blow up; use the simplex.
FM_DIM_LIMIT = 12


@dataclass(frozen=True)
class HSystem:
    """Rows ``a.x >= b`` (``ineqs``) and ``a.x = b`` (``eqs``) in ``dim`` variables."""

    dim: int
    ineqs: tuple[tuple[Vector, Fraction | int], ...] = ()
    eqs: tuple[tuple[Vector, Fraction | int], ...] = ()

    @classmethod
    def cone(cls, normals: Sequence[Sequence[int]], dim: int | None = None) -> "HSystem":
        if dim is None:
            dim = len(normals[0])
        return cls(dim, tuple((tuple(a), 0) for a in normals))

    def contains(self, x: Sequence) -> bool:
        dot = lambda a: sum(Fraction(ai) * xi for ai, xi in zip(a, x))  # noqa: E731
        return (all(dot(a) >= b for a, b in self.ineqs)
                and all(dot(a) == b for a, b in self.eqs))


@dataclass
class Implication:
    """Outcome of asking whether ``target . x >= 0`` follows from a cone.

    When it holds, ``certificate`` are nonnegative multipliers with
    ``sum(c_j * normal_j) == target``.  Otherwise ``witness`` is a point of
    the cone with ``target . witness < 0``.
    """

    holds: bool
    certificate: list[Fraction] | None = None
    witness: list[Fraction] | None = None
    engine: str = field(default="fm")

    def __bool__(self) -> bool:
        return self.holds


def _dot(a: Sequence, x: Sequence) -> Fraction:
    return sum((Fraction(p) * q for p, q in zip(a, x)), Fraction(0))


def _check(normals: Sequence[Vector], target: Vector, res: Implication) -> Implication:
    if res.holds:
        cert = res.certificate
        combo = [sum((c * Fraction(a[k]) for c, a in zip(cert, normals)), Fraction(0))
                 for k in range(len(target))]
        if any(c < 0 for c in cert) or combo != [Fraction(t) for t in target]:
            raise ArithmeticError("invalid Farkas certificate")
    else:
        w = res.witness
        if any(_dot(a, w) < 0 for a in normals) or _dot(target, w) >= 0:
            raise ArithmeticError("invalid separating witness")
    return res


def _implies_fm(normals: Sequence[Vector], target: Vector) -> Implication:
    dim = len(target)
    rows = [(tuple(Fraction(v) for v in a), Fraction(0), {j: Fraction(1)})
            for j, a in enumerate(normals)]
    t_idx = len(rows)
    rows.append((tuple(-Fraction(v) for v in target), Fraction(1), {t_idx: Fraction(1)}))
    stages, order, contradiction = eliminate_all(rows)
    if contradiction is not None:
        hist = contradiction[2]
        mt = hist[t_idx]
        cert = [hist.get(j, Fraction(0)) / mt for j in range(len(normals))]
        return Implication(True, certificate=cert, engine="fm")
    point = back_substitute(stages, order, dim)
    return Implication(False, witness=point, engine="fm")


def _implies_simplex(normals: Sequence[Vector], target: Vector) -> Implication:
    dim = len(target)
    A = [[Fraction(a[k]) for a in normals] for k in range(dim)]
    res = solve_standard(A, list(target), [0] * len(normals))
    if res.status == "optimal":
        return Implication(True, certificate=res.x, engine="simplex")
    ge = [(tuple(a), 0) for a in normals]
    for k in range(dim):
        unit = tuple(int(j == k) for j in range(dim))
        ge.append((unit, -1))
        ge.append((tuple(-u for u in unit), -1))
    sep = linprog(list(target), ge=ge)
    return Implication(False, witness=sep.x, engine="simplex")


def implies(normals: Sequence[Vector], target: Vector, engine: str | None = None) -> Implication:
    """Decide whether ``{x : a.x >= 0 for a in normals}`` satisfies ``target.x >= 0``.

    ``engine`` is ``"fm"``, ``"simplex"`` or ``None`` to choose by dimension.
    Certificates and witnesses are verified before they are returned.
    """
    target = tuple(target)
    normals = [tuple(a) for a in normals if any(a)]
    if not any(target):
        return Implication(True, certificate=[Fraction(0)] * len(normals), engine="trivial")
    if not normals:
        return _check(normals, target, Implication(
            False, witness=[-Fraction(t) for t in target], engine="trivial"))
    if engine is None:
        engine = os.environ.get("SCL_ENGINE") or ("fm" if len(target) <= FM_DIM_LIMIT else "simplex")
    if engine == "fm":
        try:
            return _check(normals, target, _implies_fm(normals, target))
        except FMOverflow:
            engine = "simplex"
    if engine != "simplex":
        raise ValueError(f"unknown engine {engine!r}")
    return _check(normals, target, _implies_simplex(normals, target))


def cones_equal(first: Sequence[Vector], second: Sequence[Vector], engine: str | None = None
                ) -> tuple[bool, list[Fraction] | None, str | None]:
    """Compare two cones given by normals.

    Returns ``(equal, witness, side)``.  If they differ, ``witness`` lies in
    the cone named by ``side`` (``"first"`` or ``"second"``) but not the other.
    """
    for a in second:
        res = implies(first, a, engine)
        if not res:
            return False, res.witness, "first"
    for a in first:
        res = implies(second, a, engine)
        if not res:
            return False, res.witness, "second"
    return True, None, None


def contains_point(normals: Sequence[Vector], x: Sequence) -> bool:
    return all(_dot(a, x) >= 0 for a in normals)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(M)) == 1


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        r = next((r for r in range(c, n) if A[r][c] != 0), None)
        if r is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[r] = A[r], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for k in range(n):
            if k != c and A[k][c] != 0:
                f = A[k][c]
                A[k] = [a - f * b for a, b in zip(A[k], A[c])]
    return [row[n:] for row in A]


def _eliminate_equalities(system: HSystem):
    """Substitute equalities that have a unit coefficient.

    Returns ``(ineqs, rest_eqs, free, lift)`` where ``lift`` maps a point in
    the ``free`` variables back to all ``dim`` coordinates.
    """
    dim = system.dim
    # each coordinate as an affine form in the remaining variables
    forms = {j: ({j: Fraction(1)}, Fraction(0)) for j in range(dim)}
    eqs = [(dict(enumerate(map(Fraction, a))), Fraction(b)) for a, b in system.eqs]
    leftover = []
    solved: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    for a, b in eqs:
        a, b = _substitute(a, b, solved)
        a = {k: v for k, v in a.items() if v != 0}
        if not a:
            if b != 0:
                return None
            continue
        pivot = next((k for k, v in a.items() if abs(v) == 1), None)
        if pivot is None:
            leftover.append((a, b))
            continue
        s = a[pivot]
        expr = {k: -v / s for k, v in a.items() if k != pivot}
        solved = {j: _compose(f, c, pivot, expr, b / s) for j, (f, c) in solved.items()}
        solved[pivot] = (expr, b / s)
    free = [j for j in range(dim) if j not in solved]
    for j, (f, c) in solved.items():
        forms[j] = (f, c)
    return forms, free, leftover


def _substitute(a, b, solved):
    out = dict(a)
    rhs = b
    for j, (f, c) in solved.items():
        coef = out.pop(j, Fraction(0))
        if coef:
            for k, v in f.items():
                out[k] = out.get(k, Fraction(0)) + coef * v
            rhs -= coef * c
    return out, rhs


def _compose(f, c, pivot, expr, const):
    coef = f.get(pivot, Fraction(0))
    if not coef:
        return f, c
    g = {k: v for k, v in f.items() if k != pivot}
    for k, v in expr.items():
        g[k] = g.get(k, Fraction(0)) + coef * v
    return g, c + coef * const


def _reduced(system: HSystem):
    """Rewrite ``system`` over its free variables with integer rows."""
    elim = _eliminate_equalities(system)
    if elim is None:
        return None
    forms, free, leftover = elim
    index = {j: k for k, j in enumerate(free)}

    def rewrite(a, b):
        row = [Fraction(0)] * len(free)
        rhs = Fraction(b)
        for j, coef in enumerate(a):
            coef = Fraction(coef)
            if not coef:
                continue
            f, c = forms[j]
            rhs -= coef * c
            for k, v in f.items():
                row[index[k]] += coef * v
        return row, rhs

    ineqs = [rewrite(a, b) for a, b in system.ineqs]
    for a, b in leftover:
        row = [Fraction(0)] * len(free)
        for k, v in a.items():
            row[index[k]] += v
        ineqs.append((row, b))
        ineqs.append(([-v for v in row], -b))
    return forms, free, ineqs


def bounding_box(system: HSystem) -> list[tuple[Fraction, Fraction]] | None:
    """Per-coordinate bounds of a polyhedron; None if empty, error if unbounded."""
    red = _reduced(system)
    if red is None:
        return None
    _, free, ineqs = red
    return _box(ineqs, len(free))


def _box(ineqs, d):
    box = []
    for k in range(d):
        unit = [int(j == k) for j in range(d)]
        lo = linprog(unit, ge=ineqs)
        if lo.status == "infeasible":
            return None
        hi = linprog([-u for u in unit], ge=ineqs)
        if lo.status == "unbounded" or hi.status == "unbounded":
            raise ValueError(f"polyhedron is unbounded in coordinate {k}")
        box.append((lo.value, -hi.value))
    return box


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def lattice_points(system: HSystem, box: Sequence[tuple[int, int]] | None = None) -> list[tuple[int, ...]]:
    """All integer points of a bounded polyhedron, sorted.

    Equalities with a unit coefficient are solved first; the remaining
    coordinates are enumerated inside an exact LP bounding box with interval
    pruning.  A ``box`` on the original coordinates may be supplied to skip
    the LPs when no equalities are present.
    """
    red = _reduced(system)
    if red is None:
        return []
    forms, free, ineqs = red
    d = len(free)
    if d == 0:
        pt = tuple(int(forms[j][1]) for j in range(system.dim))
        ok = all(b <= 0 for _, b in ineqs) and all(forms[j][1].denominator == 1 for j in forms)
        return [pt] if ok else []
    rows = []
    for a, b in ineqs:
        den = 1
        for v in list(a) + [b]:
            den = den * Fraction(v).denominator // _gcd(den, Fraction(v).denominator)
        rows.append(([int(v * den) for v in a], int(b * den)))
    if box is not None and not system.eqs:
        ibox = [tuple(map(int, box[j])) for j in free]
    else:
        ibox = _propagate(rows, d)
        if ibox is None:
            return []
        if any(lo is None or hi is None for lo, hi in ibox):
            fbox = _box(ineqs, d)
            if fbox is None:
                return []
            ibox = [(_ceil(lo), _floor(hi)) for lo, hi in fbox]
    return _enumerate(rows, ibox, forms, free, system.dim)


def _propagate(rows, d, rounds: int = 100):
    """Integer bounds from repeated single-row tightening; None if infeasible.

    Entries stay ``None`` where no finite bound was found.
    """
    lo: list[int | None] = [None] * d
    hi: list[int | None] = [None] * d
    for _ in range(rounds):
        changed = False
        for a, b in rows:
            for k, c in enumerate(a):
                if c == 0:
                    continue
                rest = 0
                for j, aj in enumerate(a):
                    if j == k or aj == 0:
                        continue
                    m = hi[j] if aj > 0 else lo[j]
                    if m is None:
                        break
                    rest += aj * m
                else:
                    need = b - rest
                    if c > 0:
                        v = -((-need) // c)
                        if lo[k] is None or v > lo[k]:
                            lo[k], changed = v, True
                    else:
                        v = need // c
                        if hi[k] is None or v < hi[k]:
                            hi[k], changed = v, True
                    if lo[k] is not None and hi[k] is not None and lo[k] > hi[k]:
                        return None
        if not changed:
            break
    return list(zip(lo, hi))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _enumerate(rows, ibox, forms, free, dim):
    d = len(ibox)
    if any(lo > hi for lo, hi in ibox):
        return []
    # narrowest coordinates first: prunes far earlier than the input order
    order = sorted(range(d), key=lambda k: ibox[k][1] - ibox[k][0])
    rows = [([a[k] for k in order], b) for a, b in rows]
    ibox = [ibox[k] for k in order]
    free = [free[k] for k in order]
    # suffix[r][k]: max of sum_{j>k} a_j x_j over the box
    suffix = []
    for a, _ in rows:
        s = [0] * (d + 1)
        for k in range(d - 1, -1, -1):
            lo, hi = ibox[k]
            s[k] = s[k + 1] + max(a[k] * lo, a[k] * hi)
        suffix.append(s)
    active = [[r for r, (a, _) in enumerate(rows) if a[k] != 0] for k in range(d)]
    iforms = _integer_forms(forms, free, dim)
    out = []
    x = [0] * d
    partial = [0] * len(rows)

    def rec(k):
        lo, hi = ibox[k]
        for r in active[k]:
            a, b = rows[r]
            need = b - partial[r] - suffix[r][k + 1]
            c = a[k]
            if c > 0:
                lo = max(lo, -((-need) // c))
            else:
                hi = min(hi, need // c)
        for v in range(lo, hi + 1):
            x[k] = v
            for r in active[k]:
                partial[r] += rows[r][0][k] * v
            if k + 1 == d:
                if all(partial[r] >= rows[r][1] for r in range(len(rows))):
                    out.append(_lift(x, iforms))
            else:
                rec(k + 1)
            for r in active[k]:
                partial[r] -= rows[r][0][k] * v

    rec(0)
    return sorted(p for p in out if p is not None)


def _integer_forms(forms, free, dim):
    """Each coordinate as ``(den, const, [(free index, coef)])`` over integers."""
    where = {k: i for i, k in enumerate(free)}
    out = []
    for j in range(dim):
        f, c = forms[j]
        den = Fraction(c).denominator
        for coef in f.values():
            den = den * Fraction(coef).denominator // _gcd(den, Fraction(coef).denominator)
        out.append((den, int(c * den), [(where[k], int(coef * den)) for k, coef in f.items()]))
    return out


def _lift(x, iforms):
    pt = []
    for den, const, terms in iforms:
        v = const + sum(coef * x[i] for i, coef in terms)
        if v % den:
            return None
        pt.append(v // den)
    return tuple(pt)
