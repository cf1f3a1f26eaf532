"""Command line runner: ``fixprop --algo ac3 puzzle.csp``.

Exit status is 0 on success, 1 when propagation produced an empty domain or
constraint, and 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .exceptions import FixpropError
from .iterate import RunStats
from .runner import DIRECTIONAL, DOMAIN_ALGOS, RELATION_ALGOS, run_algorithm
from .textio import format_csp, load_csp

log = logging.getLogger("fixprop")


def format_stats(stats: RunStats, fmt: str) -> str:
    if fmt == "tsv":
        return "applications\tadditions\tpeak\n" + "\t".join(map(str, stats.as_row())) + "\n"
    return (f"# applications={stats.applications} additions={stats.additions} "
            f"peak={stats.peak}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fixprop", description="Run a constraint propagation algorithm on a CSP file.")
    ap.add_argument("input", help="CSP file in the fixprop text format ('-' for stdin)")
    ap.add_argument("--algo", required=True, choices=DOMAIN_ALGOS + RELATION_ALGOS)
    ap.add_argument("--order", help="comma separated variable order (required for dac/dpc)")
    ap.add_argument("--select", default="fifo",
                    help="worklist selection: fifo, lifo or random:<seed> (default fifo)")
    ap.add_argument("--stats", action="store_true", help="append run counters")
    ap.add_argument("--verify", action="store_true",
                    help="check loop invariants and update assumptions while running")
    ap.add_argument("--format", choices=("text", "tsv"), default="text",
                    help="format of the stats block")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.algo in DIRECTIONAL and not args.order:
        ap.print_usage(sys.stderr)
        print(f"fixprop: error: --order is required for --algo {args.algo}", file=sys.stderr)
        return 2
    try:
        p = load_csp(args.input if args.input != "-" else "/dev/stdin")
        order = [v.strip() for v in args.order.split(",")] if args.order else None
        out, stats = run_algorithm(p, args.algo, order=order, select=args.select,
                                   verify=args.verify)
    except (OSError, FixpropError) as exc:
        print(f"fixprop: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_csp(out))
    if args.stats:
        sys.stdout.write(format_stats(stats, args.format))
    log.debug("stats: %s", stats)
    return 1 if out.has_empty() else 0
