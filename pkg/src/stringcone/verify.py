"""Certification runs: every cross-check between the cones for one or more words.

A word is checked together with an extension to a reduced word of the longest
element.  For a longest word the extension is the word itself.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement, mutate, triangle_crossings
from .cluster import (LaurentExpr, Seed, ghkk_potential, mutate_potential, potential_on,
                      restrict_potential, tropicalize)
from .cones import (
    area_cone,
    chamber_map,
    crossing_cone,
    level_sum_slice,
    normal_correspondence,
    open_levels,
    schubert_face,
    weight_slice,
)
from .gp_paths import all_paths, induce_path, path_area, path_context, restrict_path
from .oracles import demazure_dim
from .polyhedra import implies, lattice_points
from .words import extend_to_longest, is_prefix_extension, validate_word

MAX_RANK = 6

CHECKS = (
    "unimodular",
    "normal_bijection",
    "potential_equals_area",
    "schubert_face",
    "restrict_induce",
    "slice_counts",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": "PASS" if self.passed else "FAIL"}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class WordReport:
    word: tuple[int, ...]
    extension: tuple[int, ...]
    n: int
    checks: list[CheckResult] = field(default_factory=list)
    ghkk: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "word": list(self.word),
            "extension": list(self.extension),
            "n": self.n,
            "status": "PASS" if self.passed else "FAIL",
            "checks": [c.to_json() for c in self.checks],
        }
        if self.ghkk is not None:
            out["ghkk"] = self.ghkk
        return out


@dataclass
class VerificationReport:
    reports: list[WordReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "status": "PASS" if self.passed else "FAIL",
            "words": len(self.reports),
            "reports": [r.to_json() for r in self.reports],
        }


def _frac(x) -> str | int:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _cone_check(name: str, first, second, labels=("first", "second")) -> CheckResult:
    ok, witness, side = first.equals(second)
    if ok:
        return CheckResult(name, True)
    return CheckResult(name, False, {
        "point": [_frac(v) for v in witness],
        "only_in": labels[0] if side == "first" else labels[1],
        "space": list(first.space),
    })


def _check_unimodular(arr: Arrangement) -> CheckResult:
    det = chamber_map(arr).det()
    return CheckResult("unimodular", abs(det) == 1, None if abs(det) == 1 else {"det": det})


def _check_bijection(arr: Arrangement, opened) -> CheckResult:
    ok, extra, missing = normal_correspondence(arr, opened)
    if ok:
        return CheckResult("normal_bijection", True)
    return CheckResult("normal_bijection", False, {
        "unmatched_images": [list(v) for v in extra],
        "unmatched_targets": [list(v) for v in missing],
    })


def _check_potential(arr: Arrangement, arr0: Arrangement, opened) -> CheckResult:
    pot = potential_on(arr0.word, arr0.n)
    tropical = tropicalize(restrict_potential(pot, arr), arr)
    return _cone_check("potential_equals_area", tropical, area_cone(arr, True, opened),
                       ("potential", "area"))


def _check_schubert(arr: Arrangement, arr0: Arrangement) -> CheckResult:
    return _cone_check("schubert_face", schubert_face(arr, arr0), crossing_cone(arr, True),
                       ("face", "crossing_cone"))


def _check_paths(arr: Arrangement, arr0: Arrangement) -> CheckResult:
    for p in all_paths(arr):
        back = restrict_path(induce_path(p, arr, arr0), arr0, arr)
        if back != [p]:
            return CheckResult("restrict_induce", False, {
                "path": p.to_json(),
                "returned": [q.to_json() for q in back],
            })
    return CheckResult("restrict_induce", True)


def _check_slices(arr: Arrangement, opened) -> CheckResult:
    n = arr.n
    crossing = crossing_cone(arr, True)
    area = area_cone(arr, True, opened)
    for weight in itertools.product((0, 1), repeat=n):
        expected = demazure_dim(arr.word, weight, n)
        got = len(lattice_points(weight_slice(crossing, n, weight)))
        got_area = len(lattice_points(level_sum_slice(area, arr, weight)))
        if got != expected or got_area != expected:
            return CheckResult("slice_counts", False, {
                "weight": list(weight),
                "expected": expected,
                "crossing_cone": got,
                "area_cone": got_area,
            })
    return CheckResult("slice_counts", True)


def ghkk_comparison(arr: Arrangement, arr0: Arrangement) -> dict:
    """Compare the GHKK-type cone with the restricted-potential cone.

    Containment of the GHKK cone in the restricted cone is certified normal
    by normal; a point separating them is reported when they differ.
    """
    expr, missing = ghkk_potential(Seed.from_arrangement(arr))
    ghkk = tropicalize(expr, arr)
    restricted = tropicalize(restrict_potential(potential_on(arr0.word, arr0.n), arr), arr)
    contained = all(implies(ghkk.normals, a).holds for a in restricted.normals)
    equal, witness, side = ghkk.equals(restricted)
    out = {
        "ghkk_inequalities": ghkk.inequalities(),
        "restricted_inequalities": restricted.inequalities(),
        "ghkk_inside_restricted": contained,
        "equal": equal,
        "unoptimized_frozen": [list(lab) for lab in missing],
    }
    if not equal:
        inner, outer = (restricted, ghkk) if side == "second" else (ghkk, restricted)
        simple = sign_witness(inner, outer)
        out["witness"] = [_frac(v) for v in (simple or witness)]
        out["witness_only_in"] = "ghkk" if side == "first" else "restricted"
        out["space"] = list(ghkk.space)
    return out


def _area_expr(arr: Arrangement, paths) -> LaurentExpr:
    basis = Seed.from_arrangement(arr).vertices
    rows = []
    for p in paths:
        area = path_area(arr, p)
        rows.append((tuple(-int(b in area) for b in basis), 1))
    return LaurentExpr(basis, rows)


def braid_context_report(arr: Arrangement, label) -> dict:
    """Compare path sets across the braid move at ``label``, one context at a time.

    Paths are grouped by :func:`path_context` relative to the flipped
    triangle.  In every group the area monomials of the new paths must be the
    monomial-rule image of the old ones, which also fixes the group sizes.
    Returns the size pairs ``(old, new)`` seen and any mismatching contexts.
    """
    region = set(triangle_crossings(arr, label))
    new, _ = mutate(arr, label)
    groups: dict = defaultdict(lambda: ([], []))
    for p in all_paths(arr):
        groups[path_context(p, region)][0].append(p)
    for p in all_paths(new):
        groups[path_context(p, region)][1].append(p)
    shapes: dict[tuple[int, int], int] = defaultdict(int)
    mismatches = []
    for key, (old, fresh) in groups.items():
        shapes[len(old), len(fresh)] += 1
        moved = mutate_potential(_area_expr(arr, old), arr, label)[0] if old else None
        if moved != _area_expr(new, fresh):
            mismatches.append({"context": repr(key), "old": len(old), "new": len(fresh)})
    return {"shapes": dict(shapes), "mismatches": mismatches}


def sign_witness(inner, outer, max_plus: int = 2) -> tuple[int, ...] | None:
    """A +-1 point in ``inner`` but not ``outer``, fewest +1 entries first."""
    d = inner.dim
    for plus in range(max_plus + 1):
        for pos in itertools.combinations(range(d), plus):
            x = tuple(1 if k in pos else -1 for k in range(d))
            if inner.contains(x) and not outer.contains(x):
                return x
    return None


def verify_word(word, n: int, extension=None, ghkk: bool = False) -> WordReport:
    """Run every check on ``word`` inside ``extension`` (default: largest ascents)."""
    if n > MAX_RANK:
        raise ValueError(f"rank {n} exceeds the verification limit {MAX_RANK}")
    word = validate_word(word, n)
    if extension is None:
        extension = extend_to_longest(word, n)
    extension = validate_word(extension, n)
    if not is_prefix_extension(word, extension, n):
        raise ValueError(f"{extension} is not a reduced extension of {word} to the longest element")
    arr, arr0 = Arrangement(word, n), Arrangement(extension, n)
    opened = open_levels(arr, arr0)
    report = WordReport(word, extension, n, [
        _check_unimodular(arr),
        _check_bijection(arr, opened),
        _check_potential(arr, arr0, opened),
        _check_schubert(arr, arr0),
        _check_paths(arr, arr0),
        _check_slices(arr, opened),
    ])
    if ghkk:
        report.ghkk = ghkk_comparison(arr, arr0)
    return report


def _run(args) -> WordReport:
    return verify_word(*args)


def verify_many(words, n: int, ghkk: bool = False, jobs: int | None = None) -> VerificationReport:
    """Verify several words, fanning out over a process pool when ``jobs > 1``."""
    tasks = [(w, n, None, ghkk) for w in words]
    if jobs is None:
        jobs = min(len(tasks), os.cpu_count() or 1)
    if jobs <= 1 or len(tasks) <= 1:
        return VerificationReport([_run(t) for t in tasks])
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return VerificationReport(list(pool.map(_run, tasks)))
