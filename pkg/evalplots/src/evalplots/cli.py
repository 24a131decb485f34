"""Command-line figure generation from eval CSVs.

One subcommand per figure; each reads the CSV named by --in, writes
exactly one image to --out, and prints a one-line summary. Exit codes:
0 on success, 2 on failure with the error's class name on stderr (the
same convention as the route toolkit CLI whose output this consumes).
The input CSV is never modified.
"""

from __future__ import annotations

import argparse
import sys

from .errors import PlotError
from .plots import plot_coverage_vs_distance, plot_displacement_cdf, plot_radius_sweep
from .rows import read_rows


def cmd_displacement_cdf(args) -> int:
    summaries = plot_displacement_cdf(read_rows(args.in_path), args.out, by_city=args.by_city)
    print(f"{len(summaries)} series -> {args.out}")
    return 0


def cmd_coverage_vs_distance(args) -> int:
    summaries = plot_coverage_vs_distance(read_rows(args.in_path), args.out, by_city=args.by_city)
    print(f"{len(summaries)} bins -> {args.out}")
    return 0


def cmd_radius_sweep(args) -> int:
    summaries = plot_radius_sweep(read_rows(args.in_path), args.out, by_city=args.by_city)
    print(f"{len(summaries)} points -> {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evalplots", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="in_path", required=True, help="eval CSV from the route toolkit")
        p.add_argument("--out", required=True, help="image path (.png or .svg)")
        p.add_argument("--by-city", action="store_true", help="one curve per city label")

    p = sub.add_parser("displacement-cdf", help="empirical CDF of displacement")
    common(p)
    p.set_defaults(func=cmd_displacement_cdf)

    p = sub.add_parser("coverage-vs-distance", help="binned mean coverage vs route length")
    common(p)
    p.set_defaults(func=cmd_coverage_vs_distance)

    p = sub.add_parser("radius-sweep", help="mean and median coverage vs coverage radius")
    common(p)
    p.set_defaults(func=cmd_radius_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PlotError as exc:
        print(type(exc).__name__, file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return 2
    except OSError as exc:
        print("IoError", file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
