"""Command line interface: ``facetrees <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad usage or unreadable input.
The worker count for the oracle comes from ``--workers`` or the
``FACETREES_WORKERS`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import counting
from .arrangement import Arrangement, FaceCode, Kind, face_dimension, parse_point
from .chain import MarkedFunction, t_to_w, w_to_t
from .checks import COUNT_COLUMNS, CensusCache, count_rows, run_verify
from .facemaps import catalan_code_of_point, code_to_tree, phi_catalan, phi_shi, shi_repair, shi_tree_of_face
from .oracle import enumerate_faces
from .trees import enumerate_trees, parse_tree

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

DIRECTIONS = (
    "tree-to-face",
    "point-to-tree",
    "tree-to-marked-function",
    "marked-function-to-tree",
    "shi-face-to-tree",
)


class UsageError(Exception):
    pass


def _kind(text: str) -> Kind:
    try:
        return Kind.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown arrangement {text!r} (braid, catalan, shi)") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[q]) for r in cells) for q in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


# -- subcommands -------------------------------------------------------------


def cmd_count(args) -> int:
    Arrangement(args.kind, args.n, args.m)
    cache = CensusCache(args.workers) if args.cross else None
    rows = count_rows(args.kind, args.n, args.m, cross=args.cross, cache=cache)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COUNT_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    elif args.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        cols = ["k", "formula_count"] + (["oracle_count", "tree_count", "w_count"] if args.cross else [])
        header = ["k", "count"] + cols[2:]
        text = _table(header, [[r[c] for c in cols] for r in rows])
    _emit(text, args.output)
    if args.cross:
        for r in rows:
            others = [r[c] for c in ("oracle_count", "tree_count", "w_count") if r[c] != ""]
            if any(v != r["formula_count"] for v in others):
                print(f"count mismatch at k={r['k']}: {r}", file=sys.stderr)
                return EXIT_CHECK
    return EXIT_OK


def cmd_enumerate(args) -> int:
    arr = Arrangement(args.kind, args.n, args.m)
    census = enumerate_faces(arr, args.denominator, args.half_span, workers=args.workers)
    if args.format == "table":
        rows = sorted(census.counts_by_dim.items())
        text = _table(["dim", "faces"], rows + [("total", census.total)])
        if args.output:
            Path(args.output).write_text(census.dumps() + "\n")
        sys.stdout.write(text)
    else:
        _emit(census.dumps() + "\n", args.output)
    return EXIT_OK


def cmd_trees(args) -> int:
    trees = list(enumerate_trees(args.n, args.m, shi_only=args.shi_only))
    if args.format == "json":
        text = json.dumps([tree.to_json() for tree in trees], indent=1) + "\n"
    else:
        text = "".join(f"{tree}\n" for tree in trees)
    _emit(text, args.output)
    return EXIT_OK


def _face_out(code: FaceCode, fmt: str) -> str:
    if fmt == "json":
        d = code.to_json()
        d["dimension"] = face_dimension(code)
        return json.dumps(d, indent=1) + "\n"
    return f"dim={face_dimension(code)}\n" + "".join(f"{h}\n" for h in code.describe().split())


def _load_face(payload: str) -> FaceCode:
    p = Path(payload)
    text = p.read_text() if not payload.lstrip().startswith("{") and p.exists() else payload
    return FaceCode.from_json(json.loads(text))


def cmd_map(args) -> int:
    d, payload, fmt = args.direction, args.payload, args.format
    if d == "tree-to-face":
        tree = parse_tree(payload, args.m)
        code = phi_shi(tree) if args.kind is Kind.SHI else phi_catalan(tree)
        out = _face_out(code, fmt)
    elif d == "point-to-tree":
        point = parse_point(payload)
        code = catalan_code_of_point(point, args.m)
        tree = code_to_tree(code)
        if args.kind is Kind.SHI:
            tree = shi_repair(tree)
        if fmt == "json":
            out = json.dumps({
                "tree": str(tree),
                "ranks": [list(row) for row in code.ranks],
                "above": {str(s): sorted(code.above(s)) for s in range(1, code.m + 1)},
                "dash_sites": code.dash_sites(),
                "structure": tree.to_json(),
            }, indent=1) + "\n"
        else:
            out = f"{tree}\n"
    elif d == "tree-to-marked-function":
        w = t_to_w(parse_tree(payload, args.m))
        out = json.dumps({"n": w.n, "m": w.m, "values": list(w.values), "marks": sorted(w.marks), "text": w.render()}) + "\n" \
            if fmt == "json" else f"{w.render()}\n"
    elif d == "marked-function-to-tree":
        tree = w_to_t(MarkedFunction.parse(payload, n=args.n, m=args.m))
        out = json.dumps(tree.to_json(), indent=1) + "\n" if fmt == "json" else f"{tree}\n"
    else:  # shi-face-to-tree
        try:
            point = parse_point(payload)
        except ValueError:
            point = None
        if point is not None:
            tree = shi_repair(code_to_tree(catalan_code_of_point(point, args.m)))
        else:
            code = _load_face(payload)
            if code.arrangement.kind is not Kind.SHI:
                raise UsageError("shi-face-to-tree expects an m_shi face code or a point")
            arr = code.arrangement
            census = CensusCache(args.workers).get(Kind.CATALAN, arr.n, arr.m)
            tree = shi_tree_of_face(code, census)
        out = json.dumps(tree.to_json(), indent=1) + "\n" if fmt == "json" else f"{tree}\n"
    _emit(out, args.output)
    return EXIT_OK


def cmd_series(args) -> int:
    kinds = ["catalan", "shi"] if args.kind == "both" else [args.kind]
    fns = {"catalan": counting.verify_catalan_gf, "shi": counting.verify_shi_gf}
    reports = [fns[k](args.m, args.order) for k in kinds]
    if args.format == "json":
        out = json.dumps([
            {"name": r.name, "m": r.m, "N": r.N, "passed": r.passed,
             "first_failure": r.first_failure, "max_discrepancy": str(r.max_discrepancy)}
            for r in reports
        ], indent=1) + "\n"
    else:
        out = "".join(r.summary() + "\n" for r in reports)
    _emit(out, args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


def cmd_verify(args) -> int:
    live = args.format == "table" and not args.output
    results = run_verify(args.n_max, args.m_max, workers=args.workers,
                         progress=(lambda r: print(r.line(), flush=True)) if live else None)
    ok = all(r.passed for r in results)
    if args.format == "json":
        out = json.dumps({
            "passed": ok,
            "suites": [{"name": r.name, "n": r.n, "m": r.m, "checked": r.checked,
                        "passed": r.passed, "failure": r.failure} for r in results],
        }, indent=1) + "\n"
        _emit(out, args.output)
    else:
        summary = f"{sum(r.passed for r in results)}/{len(results)} suites passed\n"
        if live:
            sys.stdout.write(summary)
        else:
            _emit("".join(r.line() + "\n" for r in results) + summary, args.output)
    return EXIT_OK if ok else EXIT_CHECK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="facetrees", description="Faces of braid, m-Catalan and m-Shi arrangements.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("table", "json")):
        p.add_argument("--format", choices=formats, default="table")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--workers", type=_positive, default=None, help="oracle worker processes")

    p = sub.add_parser("count", help="face counts by dimension")
    p.add_argument("kind", type=_kind)
    p.add_argument("n", type=_positive)
    p.add_argument("m", type=_positive, nargs="?", default=1)
    p.add_argument("--cross", action="store_true", help="also count by oracle, trees and marked functions")
    common(p, ("table", "json", "csv"))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="brute-force face census (faces.json)")
    p.add_argument("kind", type=_kind)
    p.add_argument("n", type=_positive)
    p.add_argument("m", type=_positive, nargs="?", default=1)
    p.add_argument("--denominator", type=_positive)
    p.add_argument("--half-span")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("trees", help="list decorated trees in text form")
    p.add_argument("n", type=_positive)
    p.add_argument("m", type=_positive, nargs="?", default=1)
    p.add_argument("--shi-only", action="store_true")
    common(p)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("map", help="convert between trees, faces, points and marked functions")
    p.add_argument("direction", choices=DIRECTIONS)
    p.add_argument("payload")
    p.add_argument("--m", type=_positive, default=None, help="arity parameter (default: inferred or 1)")
    p.add_argument("--n", type=_positive, default=None, help="size for marked functions")
    p.add_argument("--kind", type=_kind, default=Kind.CATALAN, help="catalan (default) or shi")
    common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("series", help="check the generating-function equations")
    p.add_argument("kind", choices=("catalan", "shi", "both"))
    p.add_argument("m", type=_positive)
    p.add_argument("order", type=_positive)
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run every cross-check up to the given scale")
    p.add_argument("n_max", type=_positive)
    p.add_argument("m_max", type=_positive, nargs="?", default=1)
    common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "map" and args.m is None and not args.direction.startswith("tree-"):
        args.m = 1  # tree texts carry their own arity
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"facetrees {args.command}: error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
