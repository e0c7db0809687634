"""String cones of reduced words from two directions.

The *crossing cone* lives on one coordinate per crossing (plus one per level
when weighted).  Its facets are the signed turn sums of the rigorous paths,
and in the weighted version also ``x_l >= 0`` and one weight inequality per
crossing.

The *area cone* lives on one coordinate per face.  Each path contributes
minus the indicator of the faces it encloses, and each level contributes the
prefix sums of its faces, the last face excluded.

A unimodular integer map sends the area normals onto the crossing normals.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Collection, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .arrangement import Arrangement, FaceLabel, face_name
from .gp_paths import all_paths, path_area, path_normal
from .polyhedra import HSystem, cones_equal, determinant, inverse, transpose

__all__ = [
    "HCone",
    "crossing_space",
    "face_space",
    "weight_normal",
    "path_normals",
    "crossing_cone",
    "area_normals",
    "area_cone",
    "normal_correspondence",
    "level_prefix_normals",
    "open_levels",
    "UnimodularMap",
    "chamber_map",
    "weight_projection",
    "level_sums",
    "weight_slice",
    "level_sum_slice",
    "LEVEL_SUM_SIGN",
    "schubert_face",
]

# Points of the area cone over weight lambda have level sums equal to -lambda.
LEVEL_SUM_SIGN = -1


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(x) for x in v), 0)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


@dataclass(frozen=True)
class HCone:
    """A polyhedral cone ``{x : a.x >= 0 for a in normals}`` with named axes."""

    space: tuple[str, ...]
    normals: tuple[tuple[int, ...], ...]

    def canonical(self) -> "HCone":
        """Primitive normals, duplicates and zero rows removed, sorted."""
        rows = {_primitive(a) for a in self.normals if any(a)}
        return HCone(self.space, tuple(sorted(rows, reverse=True)))

    @property
    def dim(self) -> int:
        return len(self.space)

    def contains(self, x: Sequence) -> bool:
        return all(sum(Fraction(a) * b for a, b in zip(row, x)) >= 0 for row in self.normals)

    def equals(self, other: "HCone") -> tuple[bool, list[Fraction] | None, str | None]:
        if self.space != other.space:
            raise ValueError("cones live in different coordinate spaces")
        return cones_equal(self.normals, other.normals)

    def inequalities(self) -> list[str]:
        return [_format_row(a, self.space) for a in self.normals]

    def to_json(self) -> dict:
        return {"space": list(self.space), "normals": [list(a) for a in self.normals]}

    @classmethod
    def from_json(cls, data: dict) -> "HCone":
        return cls(tuple(data["space"]), tuple(tuple(a) for a in data["normals"]))


def _format_row(a: Sequence[int], space: Sequence[str]) -> str:
    parts = []
    for coef, name in zip(a, space):
        if not coef:
            continue
        var = "x" + name[1:]
        mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
        if not parts:
            parts.append(("-" if coef < 0 else "") + mag + var)
        else:
            parts.append(("- " if coef < 0 else "+ ") + mag + var)
    return (" ".join(parts) or "0") + " >= 0"


def crossing_space(arr: Arrangement, weighted: bool = True) -> tuple[str, ...]:
    names = [f"c({a},{b})" for a, b in (c.lines for c in arr.crossings)]
    if weighted:
        names += [f"w{i}" for i in range(1, arr.n + 1)]
    return tuple(names)


def face_space(arr: Arrangement, weighted: bool = True) -> tuple[str, ...]:
    labels = [c.lines for c in arr.crossings]
    if weighted:
        labels += [(i,) for i in range(1, arr.n + 1)]
    return tuple("e" + face_name(lab) for lab in labels)


def _face_coords(arr: Arrangement, weighted: bool) -> dict[FaceLabel, int]:
    labels = [c.lines for c in arr.crossings]
    if weighted:
        labels += [(i,) for i in range(1, arr.n + 1)]
    return {lab: k for k, lab in enumerate(labels)}


def weight_normal(arr: Arrangement, position: int) -> tuple[int, ...]:
    """Weight inequality attached to the crossing at ``position``.

    With ``i`` its letter: ``x_i`` minus the crossing, minus twice every later
    crossing at level ``i``, plus every later crossing at level ``i +- 1``.
    """
    ell, n = arr.length, arr.n
    i = arr.word[position - 1]
    v = [0] * (ell + n)
    v[ell + i - 1] = 1
    v[position - 1] -= 1
    for q in range(position + 1, ell + 1):
        a = arr.word[q - 1]
        if a == i:
            v[q - 1] -= 2
        elif abs(a - i) == 1:
            v[q - 1] += 1
    return tuple(v)


def path_normals(arr: Arrangement, weighted: bool = True) -> list[tuple[int, ...]]:
    """Turn-sum normals of all rigorous paths, in crossing coordinates."""
    dim = arr.length + (arr.n if weighted else 0)
    rows = []
    for p in all_paths(arr):
        v = [0] * dim
        for lines, coef in path_normal(arr, p).items():
            v[arr.crossing_of(lines).position - 1] += coef
        rows.append(tuple(v))
    return rows


def _unit(dim: int, k: int) -> tuple[int, ...]:
    return tuple(int(j == k) for j in range(dim))


def crossing_cone(arr: Arrangement, weighted: bool = True) -> HCone:
    ell, n = arr.length, arr.n
    rows = path_normals(arr, weighted)
    if weighted:
        rows += [_unit(ell + n, ell + i) for i in range(n)]
        rows += [weight_normal(arr, q) for q in range(1, ell + 1)]
    return HCone(crossing_space(arr, weighted), tuple(rows)).canonical()


def open_levels(arr: Arrangement, arr0: Arrangement) -> frozenset[int]:
    """Levels that still receive crossings when ``arr`` is extended to ``arr0``."""
    if arr0.word[:arr.length] != arr.word:
        raise ValueError(f"{arr.word} is not a prefix of {arr0.word}")
    return frozenset(arr0.word[arr.length:])


def level_prefix_normals(arr: Arrangement,
                         open_levels: Collection[int] = ()) -> list[tuple[int, ...]]:
    """Minus the running sums of the faces on each level.

    The last face of a level is left out unless the level is listed in
    ``open_levels``; a level without crossings always has ``-e_{F_i}``.
    """
    coords = _face_coords(arr, True)
    out = []
    for i in range(1, arr.n + 1):
        faces = arr.level_faces(i)
        stop = len(faces) if i in open_levels else max(len(faces) - 1, 1)
        v = [0] * len(coords)
        for f in faces[:stop]:
            v[coords[f.label]] -= 1
            out.append(tuple(v))
    return out


def area_normals(arr: Arrangement, weighted: bool = True) -> list[tuple[int, ...]]:
    """Minus the enclosed-area indicator of every rigorous path."""
    coords = _face_coords(arr, weighted)
    rows = []
    for p in all_paths(arr):
        v = [0] * len(coords)
        for lab in path_area(arr, p):
            v[coords[lab]] -= 1
        rows.append(tuple(v))
    return rows


def area_cone(arr: Arrangement, weighted: bool = True,
              open_levels: Collection[int] = ()) -> HCone:
    """Area cone; for a Schubert prefix pass the levels its extension still
    crosses, see :func:`open_levels`."""
    rows = area_normals(arr, weighted)
    if weighted:
        rows += level_prefix_normals(arr, open_levels)
    return HCone(face_space(arr, weighted), tuple(rows)).canonical()


def normal_correspondence(arr: Arrangement,
                          open_levels: Collection[int] = ()) -> tuple[bool, list, list]:
    """Check that the chamber map sends area normals onto crossing normals.

    The target is the path normals and weight normals, plus ``x_i >= 0`` for
    levels without crossings or listed in ``open_levels`` (a full level sum
    maps to that unit).  Returns
    ``(ok, unmatched_images, unmatched_targets)`` compared as multisets.
    """
    ell, n = arr.length, arr.n
    m = chamber_map(arr)
    images = Counter(m.map_normal(a) for a in area_normals(arr) + level_prefix_normals(arr, open_levels))
    targets = Counter(path_normals(arr) + [weight_normal(arr, q) for q in range(1, ell + 1)]
                      + [_unit(ell + n, ell + i - 1) for i in range(1, n + 1)
                         if not arr.level_positions(i) or i in open_levels])
    extra = sorted((images - targets).elements())
    missing = sorted((targets - images).elements())
    return not extra and not missing, extra, missing


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix from face coordinates to crossing coordinates.

    Normals are mapped by the matrix itself, points by its inverse transpose,
    so that ``map_normal(a) . map_point(x) == a . x``.
    """

    matrix: tuple[tuple[int, ...], ...]
    source: tuple[str, ...]
    target: tuple[str, ...]

    def det(self) -> int:
        return determinant(self.matrix)

    def map_normal(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r * x for r, x in zip(row, a)) for row in self.matrix)

    def map_point(self, x: Sequence) -> tuple[Fraction, ...]:
        inv_t = transpose(inverse(self.matrix))
        return tuple(sum(r * Fraction(v) for r, v in zip(row, x)) for row in inv_t)

    def map_cone(self, cone: HCone) -> HCone:
        if cone.space != self.source:
            raise ValueError("cone is not in the source space of the map")
        return HCone(self.target, tuple(self.map_normal(a) for a in cone.normals)).canonical()

    def to_json(self) -> dict:
        return {"source": list(self.source), "target": list(self.target),
                "matrix": [list(r) for r in self.matrix], "det": self.det()}


def _face_image(arr: Arrangement, label: FaceLabel) -> list[int]:
    """Image of ``-e_F`` in crossing coordinates."""
    ell, n = arr.length, arr.n
    v = [0] * (ell + n)
    f = arr.face(label)
    if f.left is None:
        occurrences = arr.level_positions(f.level)
        if occurrences:
            return list(weight_normal(arr, occurrences[0]))
        v[ell + f.level - 1] = 1
        return v
    v[f.left - 1] += 1
    if f.right is not None:
        v[f.right - 1] += 1
    for q in f.above + f.below:
        v[q - 1] -= 1
    return v


def chamber_map(arr: Arrangement) -> UnimodularMap:
    """The integer map sending area normals to crossing normals."""
    coords = _face_coords(arr, True)
    cols = [None] * len(coords)
    for lab, k in coords.items():
        cols[k] = [-x for x in _face_image(arr, lab)]
    matrix = tuple(tuple(col[r] for col in cols) for r in range(len(coords)))
    return UnimodularMap(matrix, face_space(arr), crossing_space(arr))


def weight_projection(x: Sequence, n: int) -> tuple:
    """The weight part of a point of a weighted crossing cone."""
    return tuple(x[len(x) - n:])


def level_sums(x: Sequence, arr: Arrangement) -> tuple:
    """Per level, the sum of the face coordinates of a point in face space."""
    coords = _face_coords(arr, True)
    return tuple(sum(x[coords[f.label]] for f in arr.level_faces(i)) for i in range(1, arr.n + 1))


def weight_slice(cone: HCone, n: int, weight: Sequence[int]) -> HSystem:
    """Fix the last ``n`` coordinates of a weighted crossing cone to ``weight``."""
    d = cone.dim - n
    ineqs = []
    for a in cone.normals:
        rhs = -sum(x * y for x, y in zip(a[d:], weight))
        ineqs.append((tuple(a[:d]), rhs))
    return HSystem(d, tuple(ineqs))


def level_sum_slice(cone: HCone, arr: Arrangement, weight: Sequence[int],
                    sign: int = LEVEL_SUM_SIGN) -> HSystem:
    """Area-cone points whose faces on level ``l`` sum to ``sign * weight[l]``."""
    coords = _face_coords(arr, True)
    eqs = []
    for i in range(1, arr.n + 1):
        row = [0] * len(coords)
        for f in arr.level_faces(i):
            row[coords[f.label]] = 1
        eqs.append((tuple(row), sign * weight[i - 1]))
    return HSystem(len(coords), tuple((a, 0) for a in cone.normals), tuple(eqs))


def schubert_face(arr: Arrangement, arr0: Arrangement) -> HCone:
    """Weighted crossing cone of ``arr0`` cut by setting the crossings beyond
    the prefix ``arr`` to zero, as a cone in the coordinates of ``arr``."""
    ell = arr.length
    if arr0.word[:ell] != arr.word:
        raise ValueError(f"{arr.word} is not a prefix of {arr0.word}")
    full = crossing_cone(arr0, weighted=True)
    keep = list(range(ell)) + list(range(arr0.length, arr0.length + arr.n))
    rows = tuple(tuple(a[k] for k in keep) for a in full.normals)
    return HCone(crossing_space(arr), rows).canonical()
