"""Pseudoline arrangements of reduced words, their faces and quivers.

Lines ``l_1 .. l_{n+1}`` start at heights ``1 .. n+1`` on the left.  Letter
``s_h`` at column ``c`` is a crossing at level ``h`` that swaps the lines at
heights ``h`` and ``h+1``.  A crossing is named by the pair of lines meeting
there, smaller label first.

Faces live in the bands between consecutive heights.  A face is named by the
crossing that bounds it on the left, or by ``(h,)`` for the face at level
``h`` that is unbounded to the left.  Faces above the top line and below the
bottom line are not part of the arrangement.

>>> arr = Arrangement((1, 2, 1), 2)
>>> [c.lines for c in arr.crossings]
[(1, 2), (1, 3), (2, 3)]
>>> [face_name(f.label) for f in arr.faces]
['(1,2)', '(1,3)', '(2,3)', '1', '2']
>>> [face_name(f) for f in arr.mutable_faces()]
['(1,2)']
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from .words import Word, is_reduced, validate_word

__all__ = [
    "FaceLabel",
    "Crossing",
    "Face",
    "Arrangement",
    "face_name",
    "parse_face",
    "mutate",
    "triangle_crossings",
]

FaceLabel = tuple[int, ...]


def face_name(label: FaceLabel) -> str:
    if len(label) == 1:
        return str(label[0])
    return f"({label[0]},{label[1]})"


def parse_face(text: str) -> FaceLabel:
    """Inverse of :func:`face_name`; also accepts ``F(1,2)`` and ``F1``."""
    t = text.strip().lstrip("Ffe").strip()
    if t.startswith("("):
        a, b = t.strip("()").split(",")
        return (int(a), int(b))
    return (int(t),)


@dataclass(frozen=True)
class Crossing:
    position: int
    level: int
    lines: tuple[int, int]


@dataclass(frozen=True)
class Face:
    """A face at ``level`` between the crossings at columns ``left`` and ``right``.

    ``above`` and ``below`` list the columns of crossings at the neighbouring
    levels that touch the face.
    """

    label: FaceLabel
    level: int
    left: int | None
    right: int | None
    above: tuple[int, ...]
    below: tuple[int, ...]

    @property
    def frozen(self) -> bool:
        return self.left is None or self.right is None


class Arrangement:
    """The pseudoline arrangement of a reduced word of a permutation of S_{n+1}."""

    def __init__(self, word: Sequence[int], n: int):
        word = validate_word(word, n)
        if not is_reduced(word, n):
            raise ValueError(f"word {word} is not reduced")
        self.word: Word = word
        self.n = n
        orders = [tuple(range(1, n + 2))]
        crossings = []
        for pos, h in enumerate(word, start=1):
            cur = list(orders[-1])
            lo, hi = cur[h - 1], cur[h]
            crossings.append(Crossing(pos, h, (min(lo, hi), max(lo, hi))))
            cur[h - 1], cur[h] = hi, lo
            orders.append(tuple(cur))
        self.orders: tuple[tuple[int, ...], ...] = tuple(orders)
        self.crossings: tuple[Crossing, ...] = tuple(crossings)
        self.faces: tuple[Face, ...] = self._build_faces()
        self.face_index = {f.label: k for k, f in enumerate(self.faces)}
        self._by_lines = {c.lines: c for c in self.crossings}

    def __repr__(self) -> str:
        return f"Arrangement({self.word}, n={self.n})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Arrangement) and self.word == other.word
                and self.n == other.n)

    def __hash__(self) -> int:
        return hash((self.word, self.n))

    @property
    def length(self) -> int:
        return len(self.word)

    def crossing(self, position: int) -> Crossing:
        return self.crossings[position - 1]

    def crossing_of(self, lines: tuple[int, int]) -> Crossing:
        return self._by_lines[tuple(sorted(lines))]

    def has_crossing(self, lines: tuple[int, int]) -> bool:
        return tuple(sorted(lines)) in self._by_lines

    def level_positions(self, h: int) -> list[int]:
        return [c.position for c in self.crossings if c.level == h]

    def height(self, line: int, column: int) -> int:
        """Height of ``line`` after the first ``column`` crossings."""
        return self.orders[column].index(line) + 1

    def right_height(self, line: int) -> int:
        return self.height(line, self.length)

    def line_positions(self, line: int) -> list[int]:
        """Columns of the crossings on ``line``, left to right."""
        return [c.position for c in self.crossings if line in c.lines]

    def _build_faces(self) -> tuple[Face, ...]:
        n, ell = self.n, self.length
        faces = []
        for c in self.crossings:
            h = c.level
            later = [d.position for d in self.crossings[c.position:] if d.level == h]
            right = later[0] if later else None
            stop = right if right is not None else ell + 1
            faces.append(Face(c.lines, h, c.position, right,
                              self._between(h + 1, c.position, stop),
                              self._between(h - 1, c.position, stop)))
        for h in range(1, n + 1):
            first = [d.position for d in self.crossings if d.level == h]
            right = first[0] if first else None
            stop = right if right is not None else ell + 1
            faces.append(Face((h,), h, None, right, self._between(h + 1, 0, stop),
                              self._between(h - 1, 0, stop)))
        return tuple(faces)

    def _between(self, level: int, lo: int, hi: int) -> tuple[int, ...]:
        if not 1 <= level <= self.n:
            return ()
        return tuple(c.position for c in self.crossings
                     if c.level == level and lo < c.position < hi)

    def face(self, label: FaceLabel) -> Face:
        try:
            return self.faces[self.face_index[tuple(label)]]
        except KeyError:
            raise KeyError(f"no face {face_name(tuple(label))} in {self!r}") from None

    def face_labels(self) -> list[FaceLabel]:
        return [f.label for f in self.faces]

    def level_faces(self, h: int) -> list[Face]:
        """Faces at level ``h`` from left to right."""
        return [self.face((h,))] + [self.face(self.crossing(p).lines)
                                    for p in self.level_positions(h)]

    def face_left_of(self, position: int) -> FaceLabel:
        """The face whose right boundary is the crossing at ``position``."""
        c = self.crossing(position)
        earlier = [p for p in self.level_positions(c.level) if p < position]
        return self.crossing(earlier[-1]).lines if earlier else (c.level,)

    def lines_below(self, label: FaceLabel) -> frozenset[int]:
        """Lines passing below the face: a label-free name for the region."""
        f = self.face(label)
        column = f.left if f.left is not None else 0
        return frozenset(self.orders[column][:f.level])

    def to_json(self) -> dict:
        def pair(position):
            return None if position is None else list(self.crossing(position).lines)

        faces = []
        for f in self.faces:
            ident = {"pair": list(f.label)} if len(f.label) == 2 else {"level": f.label[0]}
            faces.append({"id": ident, "level": f.level, "left": pair(f.left),
                          "right": pair(f.right), "above": [pair(q) for q in f.above],
                          "below": [pair(q) for q in f.below], "frozen": f.frozen})
        return {
            "n": self.n,
            "word": list(self.word),
            "crossings": [{"pos": c.position, "level": c.level, "pair": list(c.lines)}
                          for c in self.crossings],
            "faces": faces,
        }

    def frozen_faces(self) -> list[FaceLabel]:
        return [f.label for f in self.faces if f.frozen]

    def mutable_faces(self) -> list[FaceLabel]:
        """Bounded faces with exactly three corners, i.e. braid-move triangles."""
        return [f.label for f in self.faces
                if not f.frozen and len(f.above) + len(f.below) == 1]

    @cached_property
    def arrows(self) -> tuple[tuple[FaceLabel, FaceLabel], ...]:
        """Quiver arrows between faces, arrows between frozen faces dropped.

        Faces on one level separated by a crossing get an arrow pointing right.
        On neighbouring levels, two consecutive crossings at different levels
        give an arrow from the face right of the first to the face left of the
        second.
        """
        out = []
        for c in self.crossings:
            out.append((self.face_left_of(c.position), c.lines))
        for h in range(1, self.n):
            merged = [c for c in self.crossings if c.level in (h, h + 1)]
            for a, b in zip(merged, merged[1:]):
                if a.level != b.level:
                    out.append((a.lines, self.face_left_of(b.position)))
        frozen = set(self.frozen_faces())
        return tuple(a for a in out if not (a[0] in frozen and a[1] in frozen))


def _triangle(arr: Arrangement, label: FaceLabel) -> tuple[int, int, int]:
    f = arr.face(tuple(label))
    if f.frozen or len(f.above) + len(f.below) != 1:
        raise ValueError(f"face {face_name(tuple(label))} is not mutable in {arr!r}")
    middle = (f.above + f.below)[0]
    return f.left, middle, f.right


def triangle_crossings(arr: Arrangement, label: FaceLabel) -> tuple[tuple[int, int], ...]:
    """Line pairs of the three crossings around a mutable face."""
    return tuple(arr.crossing(c).lines for c in _triangle(arr, label))


def mutate(arr: Arrangement, label: FaceLabel) -> tuple[Arrangement, dict[FaceLabel, FaceLabel]]:
    """Apply the braid move at a mutable face.

    Letters that block the move are slid out of the triangle by commutations
    first.  Returns the new arrangement and the map from old face labels to the
    labels of the same regions afterwards; the triangle maps to the new one.
    """
    left, middle, right = _triangle(arr, label)
    word = list(arr.word)
    h, m = word[left - 1], word[middle - 1]
    # Letters on the far side of the middle letter do not commute with it.
    if m > h:
        blocks = lambda a: a >= h + 2  # noqa: E731
    else:
        blocks = lambda a: a <= h - 2  # noqa: E731
    inner = list(range(left, right - 1))
    before = [word[k] for k in inner if k < middle - 1 and blocks(word[k])]
    after = [word[k] for k in inner if k > middle - 1 and blocks(word[k])]
    kept = [word[k] for k in range(left - 1, right)
            if not (left - 1 < k < right - 1 and k != middle - 1 and blocks(word[k]))]
    swapped = [m if a == h else h if a == m else a for a in kept]
    # Only the three triangle letters are at levels h or m inside ``kept``.
    new_word = word[:left - 1] + before + swapped + after + word[right:]
    new = Arrangement(new_word, arr.n)
    a_lab = arr.crossing(left).lines
    b_lab = arr.crossing(right).lines
    m_lab = arr.crossing(middle).lines
    relabel = {a_lab: b_lab, b_lab: m_lab, m_lab: a_lab}
    mapping = {lab: relabel.get(lab, lab) for lab in arr.face_labels()}
    return new, mapping
