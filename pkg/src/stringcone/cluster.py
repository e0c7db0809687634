"""Seeds, Laurent expressions and potentials on cluster tori.

A seed is an exchange matrix on labelled vertices, some of them frozen, with
``eps[a][b] = #(a -> b) - #(b -> a)``.  Entries between two frozen vertices
are always zero.  A Laurent expression on a seed is a sum of monomials whose
exponent vectors are written in the basis of that seed.

Mutation moves an expression between neighbouring seeds.  In coordinates the
torus of ``mu_k(s)`` pulls back to the torus of ``s`` via
``z^m -> z^m (1 + z^{e_k})^(-{m, e_k})``, after rewriting ``m`` in the basis
of ``s`` where ``e'_a = e_a + max(0, eps[a][k]) e_k`` and ``e'_k = -e_k``.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from math import comb

from .arrangement import Arrangement, FaceLabel, face_name, mutate
from .cones import HCone, face_space
from .words import apply_move, braid_move_path, initial_word, longest_element, permutation_of

__all__ = [
    "Seed",
    "LaurentExpr",
    "pullback",
    "transport",
    "initial_potential",
    "potential_on",
    "mutate_potential",
    "monomial_case",
    "restrict_potential",
    "tropicalize",
    "optimized_sequence",
    "ghkk_potential",
    "depth_cap",
    "DEFAULT_DEPTH_CAP",
]

DEFAULT_DEPTH_CAP = 12


def depth_cap() -> int:
    return int(os.environ.get("SCL_DEPTH_CAP", DEFAULT_DEPTH_CAP))


@dataclass(frozen=True)
class Seed:
    vertices: tuple[FaceLabel, ...]
    frozen: frozenset[FaceLabel]
    eps: tuple[tuple[int, ...], ...]

    @classmethod
    def from_arrangement(cls, arr: Arrangement) -> "Seed":
        verts = tuple(c.lines for c in arr.crossings) + tuple((i,) for i in range(1, arr.n + 1))
        index = {v: k for k, v in enumerate(verts)}
        eps = [[0] * len(verts) for _ in verts]
        for a, b in arr.arrows:
            eps[index[a]][index[b]] += 1
            eps[index[b]][index[a]] -= 1
        return cls(verts, frozenset(arr.frozen_faces()), tuple(map(tuple, eps)))

    def index(self, label: FaceLabel) -> int:
        return self.vertices.index(tuple(label))

    def mutable(self) -> list[FaceLabel]:
        return [v for v in self.vertices if v not in self.frozen]

    def entry(self, a: FaceLabel, b: FaceLabel) -> int:
        return self.eps[self.index(a)][self.index(b)]

    def mutate(self, label: FaceLabel) -> "Seed":
        k = self.index(label)
        if self.vertices[k] in self.frozen:
            raise ValueError(f"cannot mutate at frozen vertex {face_name(self.vertices[k])}")
        e = self.eps
        size = len(e)
        new = [[0] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                if k in (a, b):
                    new[a][b] = -e[a][b]
                else:
                    new[a][b] = e[a][b] + (abs(e[a][k]) * e[k][b] + e[a][k] * abs(e[k][b])) // 2
        for a in range(size):
            for b in range(size):
                if self.vertices[a] in self.frozen and self.vertices[b] in self.frozen:
                    new[a][b] = 0
        return Seed(self.vertices, self.frozen, tuple(map(tuple, new)))

    def relabel(self, mapping: Mapping[FaceLabel, FaceLabel], order: Sequence[FaceLabel]) -> "Seed":
        """Rename vertices through ``mapping`` and list them in ``order``."""
        pos = {mapping[v]: k for k, v in enumerate(self.vertices)}
        idx = [pos[v] for v in order]
        eps = tuple(tuple(self.eps[a][b] for b in idx) for a in idx)
        return Seed(tuple(order), frozenset(mapping[v] for v in self.frozen), eps)

    def is_sink(self, label: FaceLabel) -> bool:
        """No arrow leaves ``label`` towards a mutable vertex."""
        k = self.index(label)
        return all(self.eps[k][j] <= 0 for j, v in enumerate(self.vertices) if v not in self.frozen)

    def arrows(self) -> list[tuple[FaceLabel, FaceLabel, int]]:
        out = []
        for a, va in enumerate(self.vertices):
            for b, vb in enumerate(self.vertices):
                if self.eps[a][b] > 0:
                    out.append((va, vb, self.eps[a][b]))
        return out


class LaurentExpr:
    """A Laurent polynomial ``sum coef * z^exp`` with exponents over ``basis``."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: Sequence[FaceLabel], terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        self.basis = tuple(tuple(b) for b in basis)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for exp, coef in items:
            exp = tuple(exp)
            if len(exp) != len(self.basis):
                raise ValueError("exponent length does not match basis")
            acc[exp] = acc.get(exp, 0) + coef
        self.terms = {k: v for k, v in sorted(acc.items()) if v}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentExpr) and self.basis == other.basis and self.terms == other.terms

    def __repr__(self) -> str:
        return f"LaurentExpr({self.pretty()})"

    def __add__(self, other: "LaurentExpr") -> "LaurentExpr":
        if self.basis != other.basis:
            raise ValueError("cannot add expressions over different bases")
        return LaurentExpr(self.basis, list(self.terms.items()) + list(other.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def exponents(self) -> list[tuple[int, ...]]:
        return list(self.terms)

    def monomial(self, labels: Mapping[FaceLabel, int]) -> tuple[int, ...]:
        return tuple(labels.get(b, 0) for b in self.basis)

    def reindex(self, basis: Sequence[FaceLabel], mapping: Mapping[FaceLabel, FaceLabel] | None = None) -> "LaurentExpr":
        """Express over ``basis``; ``mapping`` renames old labels first."""
        mapping = mapping or {}
        pos = {tuple(b): k for k, b in enumerate(basis)}
        terms = []
        for exp, coef in self.terms.items():
            new = [0] * len(pos)
            for lab, e in zip(self.basis, exp):
                if e:
                    new[pos[mapping.get(lab, lab)]] += e
            terms.append((tuple(new), coef))
        return LaurentExpr(basis, terms)

    def pretty(self) -> str:
        parts = []
        for exp, coef in self.terms.items():
            mono = " ".join(f"e{face_name(b)}^{e}" if e != 1 else f"e{face_name(b)}"
                            for b, e in zip(self.basis, exp) if e) or "1"
            parts.append(f"{coef}*z[{mono}]" if coef != 1 else f"z[{mono}]")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"basis": ["e" + face_name(b) for b in self.basis],
                "terms": [{"exp": list(e), "coef": c} for e, c in self.terms.items()]}


def _poly_mul_binomial(terms: dict, k: int, power: int) -> dict:
    """Multiply by ``(1 + z^{e_k})^power`` for ``power >= 0``."""
    out: dict[tuple[int, ...], int] = {}
    for exp, coef in terms.items():
        for t in range(power + 1):
            e = list(exp)
            e[k] += t
            key = tuple(e)
            out[key] = out.get(key, 0) + coef * comb(power, t)
    return {a: b for a, b in out.items() if b}


def _divide_one_plus(terms: dict, k: int) -> dict:
    """Exact division by ``1 + z^{e_k}``; raises if not divisible."""
    groups: dict[tuple, dict[int, int]] = {}
    for exp, coef in terms.items():
        rest = exp[:k] + (0,) + exp[k + 1:]
        groups.setdefault(rest, {})[exp[k]] = coef
    out = {}
    for rest, poly in groups.items():
        lo, hi = min(poly), max(poly)
        # divide sum_{d=lo}^{hi} c_d t^d by (1 + t) from the top degree down
        rem = dict(poly)
        for d in range(hi, lo, -1):
            c = rem.pop(d, 0)
            if c:
                key = rest[:k] + (d - 1,) + rest[k + 1:]
                out[key] = out.get(key, 0) + c
                rem[d - 1] = rem.get(d - 1, 0) - c
        if any(rem.values()):
            raise ArithmeticError("expression is not divisible by 1 + z^e_k; result is not Laurent")
    return out


def pullback(expr: LaurentExpr, seed: Seed, label: FaceLabel) -> LaurentExpr:
    """Pull an expression on ``mu_k(seed)`` back to ``seed``.

    ``expr`` must use the vertices of ``seed`` as its basis; its exponents
    are read in the basis of the mutated seed.
    """
    if expr.basis != seed.vertices:
        raise ValueError("expression basis does not match the seed")
    k = seed.index(label)
    eps = seed.eps
    size = len(eps)
    shifted: dict[int, list] = {}
    for exp, coef in expr.terms.items():
        m = list(exp)
        m[k] = -exp[k] + sum(exp[a] * max(0, eps[a][k]) for a in range(size) if a != k)
        pairing = sum(m[a] * eps[a][k] for a in range(size))
        shifted.setdefault(-pairing, []).append((tuple(m), coef))
    low = min(shifted) if shifted else 0
    base = -min(low, 0)
    total: dict[tuple[int, ...], int] = {}
    for power, items in shifted.items():
        part = _poly_mul_binomial(dict(items), k, power + base)
        for e, c in part.items():
            total[e] = total.get(e, 0) + c
    total = {e: c for e, c in total.items() if c}
    for _ in range(base):
        total = _divide_one_plus(total, k)
    return LaurentExpr(seed.vertices, total)


def transport(expr: LaurentExpr, arr: Arrangement, label: FaceLabel
              ) -> tuple[LaurentExpr, Arrangement, dict[FaceLabel, FaceLabel]]:
    """Move an expression across the braid move at the mutable face ``label``."""
    new, mapping = mutate(arr, label)
    seed = Seed.from_arrangement(new)
    moved = expr.reindex(seed.vertices, mapping)
    return pullback(moved, seed, mapping[tuple(label)]), new, mapping


def initial_potential(n: int) -> LaurentExpr:
    """The potential on the seed of ``initial_word(n)``.

    For each ``i`` it has the chains ``-e(i,n+1) - e(i,n) - ... - e(i,n+1-k)``
    and ``-e_i - e(1,i+1) - ... - e(k,i+k)`` for ``k = 0 .. n-i``.
    """
    arr = Arrangement(initial_word(n), n)
    basis = Seed.from_arrangement(arr).vertices
    terms = []
    for i in range(1, n + 1):
        right: dict[FaceLabel, int] = {}
        left: dict[FaceLabel, int] = {(i,): -1}
        for k in range(0, n - i + 1):
            right[(i, n + 1 - k)] = -1
            if k:
                left[(k, i + k)] = -1
            terms.append((tuple(right.get(b, 0) for b in basis), 1))
            terms.append((tuple(left.get(b, 0) for b in basis), 1))
    return LaurentExpr(basis, terms)


def potential_on(word: Sequence[int], n: int) -> LaurentExpr:
    """Potential on the seed of a reduced word of w0, moved from the initial seed."""
    word = tuple(word)
    if permutation_of(word, n) != longest_element(n):
        raise ValueError(f"{word} is not a reduced word of the longest element")
    arr = Arrangement(initial_word(n), n)
    expr = initial_potential(n)
    for mv in braid_move_path(arr.word, word):
        target = apply_move(arr.word, mv)
        if mv.kind == "commute":
            arr = Arrangement(target, n)
            expr = expr.reindex(Seed.from_arrangement(arr).vertices)
            continue
        label = arr.crossing(mv.position).lines
        expr, arr, _ = transport(expr, arr, label)
        if arr.word != target:
            raise AssertionError("braid move produced an unexpected word")
    return expr


def monomial_case(exp: Sequence[int], seed: Seed, label: FaceLabel) -> tuple[int, int, int, int]:
    """``(case, incoming, outgoing, a_k)`` for a 0/-1 monomial at a mutable face.

    ``incoming`` counts the sources of arrows into the face that appear in
    the monomial and ``outgoing`` the targets of arrows out of it.
    """
    k = seed.index(label)
    incoming = sum(-exp[a] * seed.eps[a][k] for a in range(len(exp)) if seed.eps[a][k] > 0)
    outgoing = sum(exp[a] * seed.eps[a][k] for a in range(len(exp)) if seed.eps[a][k] < 0)
    a_k = exp[k]
    if incoming == outgoing == 0 and a_k == 0:
        case = 0
    elif incoming == outgoing:
        case = 1
    elif incoming < outgoing:
        case = 2
    else:
        case = 3
    return case, incoming, outgoing, a_k


def mutate_potential(expr: LaurentExpr, arr: Arrangement, label: FaceLabel
                     ) -> tuple[LaurentExpr, Arrangement]:
    """Move a potential across a braid move one monomial at a time.

    Exponents must be 0 or -1.  With ``I`` and ``P`` the numbers of incoming
    and outgoing neighbours present and ``m'`` the same coefficients in the
    new basis, the new face coefficient is ``-a_k - P`` (cases 0 and 1), the
    range ``-a_k - P + t`` for ``t = 0 .. P - I`` (case 2, binomial
    multiplicities), and for case 3 monomials with ``a_k = -1`` cancel against
    their partner with ``a_k = 0``, which keeps coefficient ``-P``.
    """
    label = tuple(label)
    seed = Seed.from_arrangement(arr)
    new, mapping = mutate(arr, label)
    k = seed.index(label)
    out: list[tuple[tuple[int, ...], int]] = []
    for exp, coef in expr.terms.items():
        if any(e not in (0, -1) for e in exp):
            raise ValueError("monomial-wise mutation needs exponents in {0, -1}")
        case, inc, outg, a_k = monomial_case(exp, seed, label)
        base = list(exp)
        if case in (0, 1):
            base[k] = -a_k - outg
            out.append((tuple(base), coef))
        elif case == 2:
            for t in range(outg - inc + 1):
                base[k] = -a_k - outg + t
                out.append((tuple(base), coef * comb(outg - inc, t)))
        else:
            partner = list(exp)
            partner[k] = -1 - a_k
            if expr.terms.get(tuple(partner)) != coef or inc - outg != 1:
                raise ArithmeticError("case 3 monomial without a cancelling partner")
            if a_k == 0:
                base[k] = -outg
                out.append((tuple(base), coef))
    moved = LaurentExpr(expr.basis, out)
    return moved.reindex(Seed.from_arrangement(new).vertices, mapping), new


def restrict_potential(expr: LaurentExpr, arr: Arrangement) -> LaurentExpr:
    """Set the coordinates of faces outside ``arr`` to zero and re-index.

    Monomials that collapse to a constant are dropped.
    """
    basis = Seed.from_arrangement(arr).vertices
    missing = [b for b in basis if b not in expr.basis]
    if missing:
        raise ValueError(f"faces {[face_name(b) for b in missing]} are not in the expression basis")
    pos = {b: k for k, b in enumerate(expr.basis)}
    terms = []
    for exp, coef in expr.terms.items():
        kept = tuple(exp[pos[b]] for b in basis)
        if any(kept):
            terms.append((kept, coef))
    return LaurentExpr(basis, terms)


def tropicalize(expr: LaurentExpr, arr: Arrangement) -> HCone:
    """One inequality per exponent vector, the zero exponent dropped."""
    basis = Seed.from_arrangement(arr).vertices
    if expr.basis != basis:
        raise ValueError("expression is not written over the faces of the arrangement")
    rows = tuple(e for e in expr.terms if any(e))
    return HCone(face_space(arr), rows).canonical()


def optimized_sequence(seed: Seed, label: FaceLabel, cap: int | None = None) -> list[FaceLabel] | None:
    """Shortest mutation sequence after which frozen ``label`` is a sink."""
    cap = depth_cap() if cap is None else cap
    if seed.is_sink(label):
        return []
    seen = {seed.eps}
    queue = deque([(seed, [])])
    while queue:
        cur, seq = queue.popleft()
        if len(seq) >= cap:
            continue
        for v in cur.mutable():
            if seq and seq[-1] == v:
                continue
            nxt = cur.mutate(v)
            if nxt.eps in seen:
                continue
            if nxt.is_sink(label):
                return seq + [v]
            seen.add(nxt.eps)
            queue.append((nxt, seq + [v]))
    return None


def ghkk_potential(seed: Seed, cap: int | None = None) -> tuple[LaurentExpr, list[FaceLabel]]:
    """Sum of the frozen theta functions pulled back from optimized seeds.

    Returns the potential and the frozen vertices for which no optimized seed
    was found within the depth cap (their terms are missing).
    """
    total = LaurentExpr(seed.vertices)
    missing = []
    for f in seed.vertices:
        if f not in seed.frozen:
            continue
        seq = optimized_sequence(seed, f, cap)
        if seq is None:
            missing.append(f)
            continue
        chain = [seed]
        for v in seq:
            chain.append(chain[-1].mutate(v))
        expr = LaurentExpr(seed.vertices, [(tuple(-int(v == f) for v in seed.vertices), 1)])
        for step in range(len(seq) - 1, -1, -1):
            expr = pullback(expr, chain[step], seq[step])
        total = total + expr
    return total, missing
