"""Command-line front end: ``pivotcc <command> [options]``.

Exit status is 0 on success, 2 on invalid input or configuration and 3 on
I/O failure.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algorithms import ALGORITHMS
from .bounds import bound_table
from .datagen import BinarySpec, gen_correlated_binary, gen_from_graph
from .errors import PivotCCError
from .experiments import CLAMP_RULES, SweepConfig, bench, run_sweep, summarize, summary_csv
from .io import (
    ingest_categorical,
    read_clustering,
    read_edge_list,
    read_label_matrix,
    write_label_matrix,
    write_report,
)
from .objective import total_disagreement
from .rng import RandomSource

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3


def _int_list(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _r_values(text):
    """``2,4,6`` or a range ``start:stop:step`` (stop inclusive)."""
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return _int_list(text)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_matrix(args):
    path = Path(args.input)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return ingest_categorical(text, set(args.drop_cols or ()), args.header)
    return read_label_matrix(text)


def cmd_consensus(args):
    m = _load_matrix(args)
    r_values = args.r_values if args.r_values else [m.k]
    config = SweepConfig(args.algo, tuple(r_values), args.runs, args.seed, args.threads)
    reports = run_sweep(m, config)
    full = next(r for r in reports if r.R == m.k)
    rows = summarize(reports, full, args.clamp_rule)
    for rep, row in zip(sorted(reports, key=lambda r: r.R), rows):
        rep.ratio_to_full = row.ratio_to_full
    csv_text = summary_csv(rows)
    if args.out in (None, "-"):
        sys.stdout.write(csv_text)
        return
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for rep in reports:
        (out / f"report_R{rep.R}.json").write_text(write_report(rep))
    (out / "summary.csv").write_text(csv_text)


def cmd_bound(args):
    r_values = args.r_values or list(range(1, 101))
    _emit(bound_table(r_values).to_csv(), args.out)


def cmd_gen(args):
    if args.mode == "binary":
        spec = BinarySpec(args.n, args.k, args.mean, args.corr, args.seed)
        m = gen_correlated_binary(spec)
    else:
        adj = read_edge_list(Path(args.graph).read_text(), args.nodes)
        m = gen_from_graph(adj, args.runs, RandomSource(args.seed))
    _emit(write_label_matrix(m), args.out)


def cmd_ingest(args):
    m = ingest_categorical(Path(args.input).read_text(), set(args.drop_cols or ()), args.header)
    _emit(write_label_matrix(m), args.out)


def cmd_eval(args):
    m = _load_matrix(args)
    c = read_clustering(Path(args.clustering).read_text())
    _emit(f"{total_disagreement(c, m)}\n", args.out)


def cmd_bench(args):
    m = _load_matrix(args)
    result = bench(
        m,
        runs=args.runs,
        seed=args.seed,
        max_bytes=int(args.memory_cap_mb * (1 << 20)),
        allow_quadratic=args.allow_quadratic,
        audit=not args.no_audit,
    )
    _emit(json.dumps(result, indent=2) + "\n", args.out)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for every random draw")
    common.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent runs")

    matrix = argparse.ArgumentParser(add_help=False)
    matrix.add_argument("--input", required=True, help="label-matrix file, or a .csv of categorical columns")
    matrix.add_argument("--drop-cols", type=_int_list, default=None, help="CSV column indices to drop")
    matrix.add_argument("--header", action="store_true", help="CSV input has a header row")

    p = argparse.ArgumentParser(prog="pivotcc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("consensus", parents=[common, matrix], help="sampling sweep of a consensus algorithm")
    c.add_argument("--algo", choices=ALGORITHMS, default="pivot")
    c.add_argument("--r-values", type=_r_values, default=None, help="e.g. 2,4,8 or 2:22:2; k is always added")
    c.add_argument("--runs", type=int, default=10)
    c.add_argument("--clamp-rule", choices=CLAMP_RULES, default="mad")
    c.set_defaults(func=cmd_consensus)

    b = sub.add_parser("bound", parents=[common], help="table of g(R) and the consensus bound")
    b.add_argument("--r-values", type=_r_values, default=None, help="default 1:100")
    b.set_defaults(func=cmd_bound)

    g = sub.add_parser("gen", parents=[common], help="write a synthetic label-matrix file")
    g.add_argument("mode", choices=("binary", "graph"))
    g.add_argument("--n", type=int, default=1000, help="binary: rows")
    g.add_argument("--k", type=int, default=100, help="binary: columns")
    g.add_argument("--mean", type=float, default=0.3, help="binary: marginal probability")
    g.add_argument("--corr", type=float, default=0.1, help="binary: pairwise column correlation")
    g.add_argument("--graph", help="graph: edge-list file")
    g.add_argument("--nodes", type=int, default=None, help="graph: node count (default max id + 1)")
    g.add_argument("--runs", type=int, default=100, help="graph: Pivot runs, one column each")
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("ingest", parents=[common], help="categorical CSV to label-matrix file")
    i.add_argument("--input", required=True)
    i.add_argument("--drop-cols", type=_int_list, default=None)
    i.add_argument("--header", action="store_true")
    i.set_defaults(func=cmd_ingest)

    e = sub.add_parser("eval", parents=[common, matrix], help="total disagreement of a clustering")
    e.add_argument("--clustering", required=True, help="one label per line")
    e.set_defaults(func=cmd_eval)

    h = sub.add_parser("bench", parents=[common, matrix], help="precomputed vs on-the-fly Pivot timing")
    h.add_argument("--runs", type=int, default=10)
    h.add_argument("--memory-cap-mb", type=float, default=1024.0, help="largest similarity table to build")
    h.add_argument("--allow-quadratic", action="store_true", help="ignore the memory cap")
    h.add_argument("--no-audit", action="store_true", help="skip the tracemalloc peak measurement")
    h.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.mode == "graph" and not args.graph:
        parser.error("gen graph needs --graph")
    try:
        args.func(args)
    except (PivotCCError, ValueError) as exc:
        print(f"pivotcc: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"pivotcc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
