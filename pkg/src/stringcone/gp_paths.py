"""Rigorous paths through a pseudoline arrangement.

For an index ``i`` the lines ``l_1 .. l_i`` are walked from right to left and
``l_{i+1} .. l_{n+1}`` from left to right.  A path starts at the right end of
a leftward line, may switch lines at any crossing, and stops at the right end
of a rightward line.  Going straight through a crossing is forbidden when the
path line has the smaller label and both lines go left, or the larger label
and both go right.  Both ends must lie between the right ends of ``l_{i+1}``
and ``l_i``.

>>> from stringcone.arrangement import Arrangement
>>> arr = Arrangement((1, 2, 1), 2)
>>> [p.vertices for p in enumerate_paths(arr, 1)]
[((1, 3), (1, 2), (2, 3)), ((1, 3), (2, 3))]
>>> [p.vertices for p in enumerate_paths(arr, 2)]
[((2, 3),)]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, FaceLabel

__all__ = [
    "GpPath",
    "enumerate_paths",
    "all_paths",
    "path_normal",
    "path_area",
    "is_rigorous",
    "restrict_path",
    "induce_path",
    "path_context",
]


@dataclass(frozen=True)
class GpPath:
    """A path for index ``orientation`` from the right end of ``source`` to
    the right end of ``sink`` through the crossings in ``vertices``."""

    orientation: int
    source: int
    sink: int
    vertices: tuple[tuple[int, int], ...]

    def lines_walked(self) -> list[int]:
        """The line used on each edge; one more entry than ``vertices``."""
        shared = [(set(u) & set(v)).pop() for u, v in zip(self.vertices, self.vertices[1:])]
        return [self.source, *shared, self.sink]

    def turns(self) -> list[tuple[int, int] | None]:
        """Per vertex, ``(from_line, to_line)`` if the path switches lines."""
        lines = self.lines_walked()
        return [(a, b) if a != b else None for a, b in zip(lines, lines[1:])]

    def to_json(self) -> dict:
        return {"orientation": self.orientation, "source": f"L{self.source}",
                "sink": f"L{self.sink}", "vertices": [list(v) for v in self.vertices]}


def _walk_next(arr: Arrangement, line: int, column: int, leftward: bool) -> int | None:
    """Column of the next crossing on ``line`` in walking direction, or None."""
    cols = arr.line_positions(line)
    if leftward:
        earlier = [c for c in cols if c < column]
        return earlier[-1] if earlier else None
    later = [c for c in cols if c > column]
    return later[0] if later else None


def enumerate_paths(arr: Arrangement, i: int) -> list[GpPath]:
    """All rigorous paths for index ``i``, sorted by vertex sequence."""
    n = arr.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside 1..{n}")
    top, bottom = arr.right_height(i), arr.right_height(i + 1)
    allowed = {line for line in range(1, n + 2)
               if bottom <= arr.right_height(line) <= top}
    if top < bottom:
        return []
    ell = arr.length
    found: list[GpPath] = []

    def leftward(line: int) -> bool:
        return line <= i

    def extend(line: int, column: int, trail: list[tuple[int, int]],
               visited: set[int], source: int) -> None:
        nxt = _walk_next(arr, line, column, leftward(line))
        if nxt is None:
            if not leftward(line) and line in allowed:
                found.append(GpPath(i, source, line, tuple(trail)))
            return
        if nxt in visited:
            raise AssertionError(f"path revisits column {nxt} in {arr!r}")
        c = arr.crossing(nxt)
        other = c.lines[0] if c.lines[1] == line else c.lines[1]
        visited.add(nxt)
        trail.append(c.lines)
        straight_banned = ((line < other and leftward(line) and leftward(other))
                           or (line > other and not leftward(line) and not leftward(other)))
        if not straight_banned:
            extend(line, nxt, trail, visited, source)
        extend(other, nxt, trail, visited, source)
        trail.pop()
        visited.discard(nxt)

    for p in range(1, i + 1):
        if p in allowed:
            extend(p, ell + 1, [], set(), p)
    return sorted(found, key=lambda q: (q.source, q.sink, q.vertices))


def all_paths(arr: Arrangement) -> list[GpPath]:
    return [p for i in range(1, arr.n + 1) for p in enumerate_paths(arr, i)]


def is_rigorous(arr: Arrangement, path: GpPath) -> bool:
    """Check that ``path`` is a valid rigorous walk in ``arr``."""
    i = path.orientation
    lines = path.lines_walked()
    column = arr.length + 1
    for k, v in enumerate(path.vertices):
        line = lines[k]
        if line not in v or not arr.has_crossing(v):
            return False
        nxt = _walk_next(arr, line, column, line <= i)
        if nxt is None or arr.crossing(nxt).lines != v:
            return False
        out = lines[k + 1]
        if out == line:
            other = v[0] if v[1] == line else v[1]
            if (line < other and line <= i and other <= i) or \
               (line > other and line > i and other > i):
                return False
        column = nxt
    last = lines[-1]
    return last > i and _walk_next(arr, last, column, False) is None and last == path.sink


def path_normal(arr: Arrangement, path: GpPath) -> dict[tuple[int, int], int]:
    """Signed sum of the crossings where the path switches lines.

    Switching from ``l_a`` to ``l_b`` contributes ``+1`` at crossing
    ``(a, b)`` when ``a < b`` and ``-1`` otherwise.
    """
    out: dict[tuple[int, int], int] = {}
    for t in path.turns():
        if t is None:
            continue
        a, b = t
        key, sign = ((a, b), 1) if a < b else ((b, a), -1)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def _line_polyline(arr: Arrangement, line: int, start: int, stop: int) -> list[tuple[Fraction, Fraction]]:
    """Points of ``line`` strictly between columns ``start`` and ``stop``."""
    half = Fraction(1, 2)
    lo, hi = min(start, stop), max(start, stop)
    pts = [(c + half, Fraction(arr.height(line, c))) for c in range(lo, hi)]
    return pts if start < stop else pts[::-1]


def _path_polygon(arr: Arrangement, path: GpPath) -> list[tuple[Fraction, Fraction]]:
    ell = arr.length
    half = Fraction(1, 2)
    lines = path.lines_walked()
    pts = [(Fraction(ell + 1), Fraction(arr.right_height(path.source)))]
    column = ell + 1
    for k, v in enumerate(path.vertices):
        c = arr.crossing_of(v)
        pts.extend(_line_polyline(arr, lines[k], column if column <= ell else ell + 1,
                                  c.position))
        pts.append((Fraction(c.position), c.level + half))
        column = c.position
    pts.extend(_line_polyline(arr, lines[-1], column, ell + 1))
    pts.append((Fraction(ell + 1), Fraction(arr.right_height(path.sink))))
    return pts


def _winding(poly: list[tuple[Fraction, Fraction]], x: Fraction, y: Fraction) -> int:
    wn = 0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        side = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
        if y0 <= y < y1 and side > 0:
            wn += 1
        elif y1 <= y < y0 and side < 0:
            wn -= 1
    return wn


def path_area(arr: Arrangement, path: GpPath) -> frozenset[FaceLabel]:
    """Faces enclosed between the path and the right boundary."""
    poly = _path_polygon(arr, path)
    half = Fraction(1, 2)
    inside = set()
    for f in arr.faces:
        x = Fraction(1, 4) if f.left is None else f.left + half
        wn = _winding(poly, x, f.level + half)
        if wn not in (0, 1):
            raise AssertionError(f"unexpected winding {wn} for {f.label} in {arr!r}")
        if wn:
            inside.add(f.label)
    return frozenset(inside)


def path_context(path: GpPath, region: set[tuple[int, int]]) -> tuple:
    """The path with each run through ``region`` collapsed to its entry and exit lines.

    Crossings keep their line-pair labels under braid moves, so paths before
    and after a move can be grouped by this key when ``region`` holds the
    three crossings of the flipped triangle.
    """
    lines = path.lines_walked()
    items: list = []
    run: list | None = None
    for k, v in enumerate(path.vertices):
        if v in region:
            if run is None:
                run = ["through", lines[k], None]
            run[2] = lines[k + 1]
            continue
        if run is not None:
            items.append(tuple(run))
            run = None
        items.append(v)
    if run is not None:
        items.append(tuple(run))
    return path.orientation, path.source, path.sink, tuple(items)


def restrict_path(path: GpPath, arr0: Arrangement, arr: Arrangement) -> list[GpPath]:
    """Pieces of a path of ``arr0`` inside the prefix arrangement ``arr``.

    The crossings beyond the prefix are cut away; every maximal run of prefix
    crossings becomes a path of ``arr`` between right ends.
    """
    ell = arr.length
    if arr0.word[:ell] != arr.word:
        raise ValueError(f"{arr.word} is not a prefix of {arr0.word}")
    lines = path.lines_walked()
    pieces: list[GpPath] = []
    run: list[tuple[int, int]] = []
    entry = None
    for k, v in enumerate(path.vertices):
        inside = arr0.crossing_of(v).position <= ell
        if inside and not run:
            entry = lines[k]
        if inside:
            run.append(v)
        elif run:
            pieces.append(GpPath(path.orientation, entry, lines[k], tuple(run)))
            run = []
    if run:
        pieces.append(GpPath(path.orientation, entry, lines[-1], tuple(run)))
    return pieces


def _greedy(arr0: Arrangement, cut: int, line: int, closer) -> tuple[list[tuple[int, int]], int]:
    """Walk right from the cut, switching whenever ``closer(line, other)``."""
    visited = []
    for c in arr0.crossings:
        if c.position <= cut or line not in c.lines:
            continue
        other = c.lines[0] if c.lines[1] == line else c.lines[1]
        visited.append(c.lines)
        if closer(line, other):
            line = other
    return visited, line


def induce_path(path: GpPath, arr: Arrangement, arr0: Arrangement) -> GpPath:
    """Extend a path of the prefix arrangement ``arr`` to a path of ``arr0``.

    Beyond the prefix the path keeps switching to lines closer to ``l_{i+1}``
    until it reaches the right end of ``l_{i+1}``.  Before its source it does
    the mirror image, coming from the right end of ``l_i``.
    """
    i = path.orientation
    ell = arr.length
    if arr0.word[:ell] != arr.word:
        raise ValueError(f"{arr.word} is not a prefix of {arr0.word}")
    tail, last = _greedy(arr0, ell, path.sink, lambda cur, o: i + 1 <= o < cur)
    head, first = _greedy(arr0, ell, path.source, lambda cur, o: cur < o <= i)
    return GpPath(i, first, last, tuple(head[::-1]) + path.vertices + tuple(tail))
