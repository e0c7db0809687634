"""Command-line interface: ``scl <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .arrangement import Arrangement, face_name
from .cluster import Seed, ghkk_potential, potential_on, restrict_potential, tropicalize
from .cones import (
    area_cone,
    chamber_map,
    crossing_cone,
    level_sum_slice,
    open_levels,
    weight_slice,
)
from .gp_paths import enumerate_paths, path_area, path_normal
from .oracles import demazure_dim, gt_count, weyl_dim
from .polyhedra import lattice_points
from .verify import MAX_RANK, VerificationReport, verify_many, verify_word
from .words import (
    enumerate_reduced_words,
    extend_to_longest,
    longest_element,
    sample_longest_words,
)


class UsageError(Exception):
    pass


def parse_ints(text: str) -> tuple[int, ...]:
    """``"1,2,1"``, ``"1 2 1"`` or ``""`` (empty word)."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"expected integers separated by commas or spaces, got {text!r}") from None


def _rank(args, *words) -> int:
    if args.n is not None:
        return args.n
    letters = [a for w in words if w for a in w]
    if not letters:
        raise UsageError("cannot infer the rank from an empty word, pass --n")
    return max(letters)


def render_arrangement(arr: Arrangement) -> str:
    """ASCII wiring diagram: one row per height, crossings drawn as ``\\ / X / \\``."""
    n, rows = arr.n, 2 * arr.n + 1
    grid = [[] for _ in range(rows)]

    def row_of(height: int) -> int:
        return 2 * (n + 1 - height)

    for r in range(rows):
        if r % 2 == 0:
            grid[r].append(f"{arr.orders[0][n - r // 2]:>2} -")
        else:
            grid[r].append("    ")
    for c in arr.crossings:
        top, bottom = row_of(c.level + 1), row_of(c.level)
        for r in range(rows):
            if r == top:
                grid[r].append("\\ /")
            elif r == top + 1:
                grid[r].append(" X ")
            elif r == bottom:
                grid[r].append("/ \\")
            else:
                grid[r].append("---" if r % 2 == 0 else "   ")
            grid[r].append("-" if r % 2 == 0 else " ")
    for r in range(rows):
        if r % 2 == 0:
            grid[r].append(f"- {arr.orders[-1][n - r // 2]}")
    return "\n".join("".join(parts).rstrip() for parts in grid)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": 1, **payload}, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_arrange(args) -> int:
    word = parse_ints(args.word)
    arr = Arrangement(word, _rank(args, word))
    _emit(args, {"arrangement": arr.to_json()}, render_arrangement(arr))
    return 0


def cmd_paths(args) -> int:
    word = parse_ints(args.word)
    arr = Arrangement(word, _rank(args, word))
    levels = [args.orientation] if args.orientation else range(1, arr.n + 1)
    records, lines = [], []
    for i in levels:
        if not 1 <= i <= arr.n:
            raise UsageError(f"orientation must lie in 1..{arr.n}")
        for p in enumerate_paths(arr, i):
            area = sorted(path_area(arr, p))
            normal = path_normal(arr, p)
            records.append({**p.to_json(), "area": [face_name(f) for f in area],
                            "normal": {f"({a},{b})": v for (a, b), v in sorted(normal.items())}})
            verts = " ".join(f"({a},{b})" for a, b in p.vertices)
            lines.append(f"i={i} L{p.source} -> L{p.sink}: {verts or '-'}"
                         f"  area {{{', '.join(face_name(f) for f in area)}}}")
    _emit(args, {"paths": records}, "\n".join(lines))
    return 0


def _extension_for(args, word, n):
    if getattr(args, "extension", None):
        return parse_ints(args.extension)
    return extend_to_longest(word, n)


def cmd_cone(args) -> int:
    word = parse_ints(args.word)
    n = _rank(args, word)
    arr = Arrangement(word, n)
    if args.kind == "string":
        cone = crossing_cone(arr, args.weighted)
    else:
        opened = ()
        if args.weighted:
            opened = open_levels(arr, Arrangement(_extension_for(args, word, n), n))
        cone = area_cone(arr, args.weighted, opened)
    _emit(args, {"cone": cone.to_json(), "kind": args.kind, "weighted": args.weighted},
          "\n".join(cone.inequalities()))
    return 0


def _linear_form(coeffs, labels) -> str:
    out = ""
    for v, lab in zip(coeffs, labels):
        if not v:
            continue
        mag = "" if abs(v) == 1 else f"{abs(v)}*"
        out += (" - " if v < 0 else " + ") + mag + lab
    if not out:
        return "0"
    return out[3:] if out.startswith(" + ") else "-" + out[3:]


def cmd_chamber_map(args) -> int:
    word = parse_ints(args.word)
    m = chamber_map(Arrangement(word, _rank(args, word)))
    width = max((len(s) for s in m.source), default=0)
    lines = [f"det = {m.det()}"]
    for k, src in enumerate(m.source):
        image = m.map_normal([-int(j == k) for j in range(len(m.source))])
        lines.append(f"-{src:<{width}} -> {_linear_form(image, m.target)}")
    _emit(args, {"chamber_map": m.to_json()}, "\n".join(lines))
    return 0


def cmd_quiver(args) -> int:
    word = parse_ints(args.word)
    seed = Seed.from_arrangement(Arrangement(word, _rank(args, word)))
    arrows = seed.arrows()
    payload = {
        "vertices": [face_name(v) for v in seed.vertices],
        "frozen": [face_name(v) for v in seed.vertices if v in seed.frozen],
        "arrows": [{"from": face_name(a), "to": face_name(b), "count": k} for a, b, k in arrows],
    }
    text = [f"frozen: {' '.join(payload['frozen'])}"]
    text += [f"{face_name(a)} -> {face_name(b)}" + (f" x{k}" if k > 1 else "") for a, b, k in arrows]
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_potential(args) -> int:
    word0 = parse_ints(args.word0)
    sub = parse_ints(args.restrict) if args.restrict is not None else None
    n = _rank(args, word0)
    arr0 = Arrangement(word0, n)
    arr = Arrangement(sub, n) if sub is not None else arr0
    if sub is not None and word0[:len(sub)] != sub:
        raise UsageError(f"{list(sub)} is not a prefix of {list(word0)}")
    if args.ghkk:
        expr, missing = ghkk_potential(Seed.from_arrangement(arr))
        if missing:
            print(f"warning: no optimized seed within the depth cap for "
                  f"{', '.join(face_name(f) for f in missing)}", file=sys.stderr)
    else:
        expr = potential_on(word0, n)
        if sub is not None:
            expr = restrict_potential(expr, arr)
    if args.tropicalize:
        cone = tropicalize(expr, arr)
        _emit(args, {"cone": cone.to_json()}, "\n".join(cone.inequalities()))
    else:
        _emit(args, {"potential": expr.to_json()}, expr.pretty())
    return 0


def cmd_polytope(args) -> int:
    word = parse_ints(args.word)
    weight = parse_ints(args.weight)
    n = _rank(args, word)
    if len(weight) != n:
        raise UsageError(f"--lambda needs {n} entries")
    arr = Arrangement(word, n)
    if args.kind == "string":
        system = weight_slice(crossing_cone(arr, True), n, weight)
        space = crossing_cone(arr, True).space
    else:
        opened = open_levels(arr, Arrangement(_extension_for(args, word, n), n))
        cone = area_cone(arr, True, opened)
        system, space = level_sum_slice(cone, arr, weight), cone.space
    points = lattice_points(system)
    if args.count:
        _emit(args, {"count": len(points)}, str(len(points)))
    else:
        _emit(args, {"space": list(space), "points": [list(p) for p in points]},
              "\n".join(" ".join(str(v) for v in p) for p in points))
    return 0


def cmd_oracle(args) -> int:
    weight = parse_ints(args.weight)
    if args.which == "dim":
        value = weyl_dim(weight)
    elif args.which == "gt":
        value = gt_count(weight)
    else:
        if args.word is None:
            raise UsageError("oracle demazure needs --word")
        word = parse_ints(args.word)
        value = demazure_dim(word, weight, args.n or len(weight))
    _emit(args, {"oracle": args.which, "value": value}, str(value))
    return 0


def _verify_words(args) -> tuple[list, int]:
    scopes = [args.word is not None, args.all_w0, args.perm is not None, args.sample is not None]
    if sum(scopes) != 1:
        raise UsageError("choose exactly one of --word, --all-w0, --perm, --sample")
    if args.word is not None:
        word = parse_ints(args.word)
        return [word], _rank(args, word)
    if args.n is None:
        raise UsageError("--n is required for this scope")
    n = args.n
    if n > MAX_RANK:
        raise UsageError(f"rank {n} exceeds the verification limit {MAX_RANK}")
    if args.all_w0:
        return enumerate_reduced_words(longest_element(n)), n
    if args.perm is not None:
        perm = parse_ints(args.perm)
        if sorted(perm) != list(range(1, n + 2)):
            raise UsageError(f"--perm must be a permutation of 1..{n + 1}")
        return enumerate_reduced_words(perm), n
    return sample_longest_words(n, args.sample, seed=args.seed), n


def cmd_verify(args) -> int:
    words, n = _verify_words(args)
    if args.extension is not None:
        if len(words) != 1:
            raise UsageError("--extension only applies to a single --word")
        ext = parse_ints(args.extension)
        report = VerificationReport([verify_word(words[0], n, ext, args.ghkk)])
    else:
        report = verify_many(words, n, ghkk=args.ghkk, jobs=args.jobs)
    data = report.to_json()
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for r in report.reports:
            status = "PASS" if r.passed else "FAIL"
            failed = [c.name for c in r.checks if not c.passed]
            word = ",".join(map(str, r.word)) or "()"
            suffix = f"  failed: {', '.join(failed)}" if failed else ""
            print(f"{status} {word} in {','.join(map(str, r.extension))}"
                  f" ({len(r.checks)} checks){suffix}")
            if r.ghkk is not None:
                g = r.ghkk
                print(f"  ghkk: equal={g['equal']} inside_restricted={g['ghkk_inside_restricted']}")
                if "witness" in g:
                    pts = ", ".join(f"{s}={v}" for s, v in zip(g["space"], g["witness"]))
                    print(f"  witness in {g['witness_only_in']} only: {pts}")
        print(f"{data['status']}: {len(report.reports)} word(s)")
    return 0 if report.passed else 1


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # Subcommands repeat the global flags without defaults so that a flag
    # given before the subcommand is not overwritten.
    p = argparse.ArgumentParser(add_help=False)
    keep = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--n", type=int, help="rank: words live in S_{n+1} (default: largest letter)", **keep)
    p.add_argument("--json", action="store_true", help="machine-readable output", **keep)
    p.add_argument("--seed", type=int, help="seed for sampled words",
                   **(keep or {"default": 0}))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(defaults=False)
    parser = argparse.ArgumentParser(prog="scl", parents=[_global_options(defaults=True)],
                                     description="String cones, area cones and superpotentials of reduced words.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, aliases=()):
        p = sub.add_parser(name, parents=[common], help=help_text, aliases=list(aliases))
        p.set_defaults(func=func)
        return p

    p = add("arrange", cmd_arrange, "draw the pseudoline arrangement")
    p.add_argument("word")

    p = add("paths", cmd_paths, "list the rigorous paths")
    p.add_argument("word")
    p.add_argument("--orientation", type=int)

    p = add("cone", cmd_cone, "inequalities of the string or area cone")
    p.add_argument("word")
    p.add_argument("--kind", choices=("string", "area"), default="string")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--extension", help="extension to the longest element (area cone of a prefix)")

    p = add("chamber-map", cmd_chamber_map, "unimodular map from face to crossing coordinates",
            aliases=("psi",))
    p.add_argument("word")

    p = add("quiver", cmd_quiver, "quiver of the seed of a word")
    p.add_argument("word")

    p = add("potential", cmd_potential, "superpotential on the seed of a word")
    p.add_argument("word0")
    p.add_argument("--restrict", metavar="WORD", help="restrict to the faces of this prefix")
    p.add_argument("--ghkk", action="store_true", help="GHKK-type potential on the (restricted) seed")
    p.add_argument("--tropicalize", action="store_true", help="print the tropical inequalities")

    p = add("polytope", cmd_polytope, "lattice points of a weight slice")
    p.add_argument("word")
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--kind", choices=("string", "area"), default="string")
    p.add_argument("--extension")

    p = add("oracle", cmd_oracle, "independent dimension formulas")
    p.add_argument("which", choices=("dim", "gt", "demazure"))
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--word")

    p = add("verify", cmd_verify, "run every cross-check")
    p.add_argument("--word")
    p.add_argument("--extension")
    p.add_argument("--all-w0", action="store_true", help="every reduced word of the longest element")
    p.add_argument("--perm", help="every reduced word of this permutation (one-line notation)")
    p.add_argument("--sample", type=int, metavar="COUNT", help="seeded sample of longest words")
    p.add_argument("--ghkk", action="store_true", help="also compare with the GHKK-type potential")
    p.add_argument("--jobs", type=int, help="worker processes (default: CPU count)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"scl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
