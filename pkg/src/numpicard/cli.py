"""Command line entry point: ``numpicard {solve,bench,weights,tables}``.

Exit codes: 0 success, 2 invalid input, 3 solver divergence.
"""

import argparse
import sys

from . import harness
from .errors import ConfigError, DivergenceError
from .families import Family
from .refset import build_reference_set

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIVERGED = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="numpicard",
        description="Numerical Picard iteration solvers for ODE initial value problems.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_opts(p):
        p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
        p.add_argument("--norm", choices=("max", "sum"), default="max",
                       help="vector norm for the reported error (default: max)")

    p = sub.add_parser("solve", help="run one experiment", allow_abbrev=False)
    p.add_argument("--problem", required=True)
    p.add_argument("--method", required=True, choices=("fixed", "variable", "stiff"))
    p.add_argument("--family")
    p.add_argument("--m", type=str)
    p.add_argument("--m-max", dest="m_max", type=str)
    p.add_argument("--M", dest="M", required=True, type=str)
    p.add_argument("--eps", required=True, type=str)
    p.add_argument("--xf", type=str, help="end of the interval; accepts e.g. 2pi")
    p.add_argument("--tau", type=str)
    p.add_argument("--endpoint-variant", dest="endpoint_variant", choices=("last-node", "end-integral"))
    p.add_argument("--max-iter", dest="max_iter", type=str)
    output_opts(p)

    p = sub.add_parser("bench", help="run every experiment of a run file", allow_abbrev=False)
    p.add_argument("file", help="run file with key=value blocks ('-' for stdin)")
    p.add_argument("--jobs", type=int, default=1)
    output_opts(p)

    p = sub.add_parser("weights", help="print reference nodes and quadrature weights", allow_abbrev=False)
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--m", required=True, type=int)

    p = sub.add_parser("tables", help="run the built-in comparison tables", allow_abbrev=False)
    p.add_argument("--which", default="all", choices=["all"] + [str(k) for k in harness.TABLES])
    p.add_argument("--jobs", type=int, default=1)
    output_opts(p)
    return parser


def _fmt17(x):
    return f"{x:.17g}"


def _cmd_weights(args, out):
    rs = build_reference_set(args.family, args.m)
    out.write(f"family: {rs.family}\nm: {rs.m}\ninterval: [{_fmt17(rs.a)}, {_fmt17(rs.b)}]\n")
    out.write("nodes: " + " ".join(_fmt17(x) for x in rs.nodes) + "\n")
    out.write("W (row k = node, column j = basis polynomial):\n")
    for row in rs.stage_matrix:
        out.write("  " + " ".join(_fmt17(x) for x in row) + "\n")
    out.write("end weights: " + " ".join(_fmt17(x) for x in rs.end_weights) + "\n")
    out.write(f"omega: {_fmt17(rs.omega)}\n")


def _report_warnings(rows, err):
    for row in rows:
        if row.warnings:
            err.write(f"warning: {row.problem}/{row.method}/{row.family}: "
                      f"{row.warnings} interval(s) hit the iteration cap\n")


def _dispatch(args, out, err):
    if args.command == "weights":
        _cmd_weights(args, out)
    elif args.command == "solve":
        keys = harness.ExperimentSpec.keys()
        spec = harness.ExperimentSpec.from_mapping({k: getattr(args, k) for k in keys})
        rows = [harness.run_experiment(spec, args.norm)]
        _report_warnings(rows, err)
        out.write(harness.emit_table(rows, args.format))
    elif args.command == "bench":
        try:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise ConfigError("file", str(exc)) from None
        specs = harness.parse_run_config(text)
        rows = harness.run_all(specs, norm=args.norm, jobs=args.jobs)
        _report_warnings(rows, err)
        out.write(harness.emit_table(rows, args.format))
    elif args.command == "tables":
        which = list(harness.TABLES) if args.which == "all" else [int(args.which)]
        for n, k in enumerate(which):
            if args.format == "markdown":
                if n:
                    out.write("\n")
                out.write(f"### Table {k}: {harness.TABLES[k].title}\n\n")
            out.write(harness.replicate(k, norm=args.norm, fmt=args.format, jobs=args.jobs))


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        _dispatch(args, out, err)
    except ConfigError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DivergenceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DIVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
