"""Command line entry point: ``rted <command> ...``.

Exit codes: 0 success, 2 usage or input error, 3 input too large for the
brute-force oracle.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from pathlib import Path

from .experiments import RunReport, count_rows, similarity_join
from .gted import ALGORITHMS, ConstantCost, UnitCost, brute_force_distance, tree_edit_distance
from .index import build_index
from .shapes import SHORT_NAMES, Shape, ShapeError, ShapeSpec, gen_shape
from .strategy import OracleSizeError, opt_strategy
from .tree import TreeParseError, XMLIngestError, ingest_xml, parse_bracket, serialize_bracket

EXIT_USAGE = 2
EXIT_ORACLE = 3


class UsageError(Exception):
    pass


def _read_tree(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_bracket(text)
    except TreeParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _costs(spec):
    if spec is None:
        return UnitCost()
    try:
        d, i, r = (float(x) for x in spec.split(","))
    except ValueError:
        raise UsageError(f"--costs expects three numbers del,ins,ren, got {spec!r}") from None
    if min(d, i, r) < 0:
        raise UsageError("--costs must be nonnegative")
    return ConstantCost(d, i, r)


def _shape_arg(text):
    key = text.lower()
    if key in SHORT_NAMES:
        return SHORT_NAMES[key]
    try:
        return Shape(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown shape {text!r}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _algo_list(text):
    algos = [a.strip().lower() for a in text.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown algorithm {a!r}")
    return algos


def cmd_compute(args):
    F, G = _read_tree(args.file_a), _read_tree(args.file_b)
    c = _costs(args.costs)
    t0 = time.perf_counter()
    if args.algo == "brute":
        d = brute_force_distance(F, G, c)
        report = RunReport("brute", d, 0, 0.0, (time.perf_counter() - t0) * 1e3, (time.perf_counter() - t0) * 1e3)
    else:
        d, stats = tree_edit_distance(F, G, args.algo, c)
        report = RunReport.from_stats(args.algo, d, stats, time.perf_counter() - t0)
    print(f"{d:g}")
    if args.report == "csv":
        print(RunReport.HEADER)
        print(report.csv_row())
    return 0


def cmd_strategy(args):
    F, G = build_index(_read_tree(args.file_a)), build_index(_read_tree(args.file_b))
    res = opt_strategy(F, G)
    _write(res.matrix.to_csv(), args.out)
    print(f"cost {res.cost}", file=sys.stderr)
    return 0


def cmd_count(args):
    try:
        rows = count_rows(args.shapes, args.sizes, args.algos, execute=args.execute, seed=args.seed)
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc
    lines = ["shape,size,algo,subproblems" + (",executed" if args.execute else "")]
    for r in rows:
        lines.append(f"{r.shape},{r.size},{r.algo},{r.subproblems}" + (f",{r.executed}" if args.execute else ""))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_join(args):
    folder = Path(args.dir)
    if not folder.is_dir():
        raise UsageError(f"not a directory: {folder}")
    files = sorted(p for p in folder.iterdir() if p.is_file())
    trees = {p.name: _read_tree(p) for p in files}
    res = similarity_join(trees, args.tau, args.algo, threads=args.threads, c=_costs(args.costs))
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["file_a", "file_b", "distance"])
        for a, b, d in res.pairs:
            w.writerow([a, b, f"{d:g}"])
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"{len(res.pairs)} of {len(trees) * (len(trees) - 1) // 2} pairs below tau={args.tau:g}", file=sys.stderr)
    for algo in args.algo:
        print(f"{algo}: subproblems={res.subproblems[algo]} seconds={res.seconds[algo]:.3f}", file=sys.stderr)
    return 0


def cmd_generate(args):
    if args.depth is not None and args.shape != Shape.FULL_BINARY:
        raise UsageError("--depth only applies to full-binary")
    if (args.size is None) == (args.depth is None):
        raise UsageError("give exactly one of --size and --depth")
    try:
        t = gen_shape(ShapeSpec(args.shape, args.size, args.depth, seed=args.seed,
                                max_depth=args.max_depth, max_fanout=args.max_fanout,
                                alphabet=args.alphabet))
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc
    _write(serialize_bracket(t) + "\n", args.out)
    return 0


def cmd_ingest(args):
    try:
        text = Path(args.xml).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.xml}: {exc.strerror}") from exc
    try:
        t = ingest_xml(text)
    except XMLIngestError as exc:
        raise UsageError(f"{args.xml}: {exc}") from exc
    _write(serialize_bracket(t) + "\n", args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="rted", description="Tree edit distance with optimal path strategies.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="edit distance of two bracket files")
    c.add_argument("file_a")
    c.add_argument("file_b")
    c.add_argument("--algo", default="rted", choices=list(ALGORITHMS) + ["brute"])
    c.add_argument("--costs", help="constant costs del,ins,ren (default unit costs)")
    c.add_argument("--report", choices=["csv"], help="also print a timing/subproblem row")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("strategy", help="dump the optimal strategy as CSV")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--out")
    s.set_defaults(func=cmd_strategy)

    n = sub.add_parser("count", help="relevant subproblems on identical synthetic pairs")
    n.add_argument("--shapes", type=lambda t: [_shape_arg(x) for x in t.split(",")], default=list(Shape))
    n.add_argument("--sizes", type=_int_list, required=True)
    n.add_argument("--algos", type=_algo_list, default=list(ALGORITHMS))
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--execute", action="store_true", help="also run the distance computation and report its count")
    n.add_argument("--out")
    n.set_defaults(func=cmd_count)

    j = sub.add_parser("join", help="self similarity join over a directory of bracket files")
    j.add_argument("--dir", required=True)
    j.add_argument("--tau", type=float, default=math.inf)
    j.add_argument("--algo", type=_algo_list, default=["rted"], help="comma separated; all are run and compared")
    j.add_argument("--threads", type=int, default=1)
    j.add_argument("--costs")
    j.add_argument("--out")
    j.set_defaults(func=cmd_join)

    g = sub.add_parser("generate", help="write a synthetic tree in bracket notation")
    g.add_argument("--shape", type=_shape_arg, required=True)
    g.add_argument("--size", type=int)
    g.add_argument("--depth", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-depth", type=int, default=15)
    g.add_argument("--max-fanout", type=int, default=6)
    g.add_argument("--alphabet", help="draw labels from these characters instead of a single 'x'")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    x = sub.add_parser("ingest", help="convert an XML document to bracket notation")
    x.add_argument("--xml", required=True)
    x.add_argument("--out")
    x.set_defaults(func=cmd_ingest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rted: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleSizeError as exc:
        print(f"rted: error: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())
