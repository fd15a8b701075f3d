"""`bench`: median timings of the closed path against brute force."""
import argparse
import csv
import sys

from ..schemas import BenchRow
from ..services import run_bench


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Time closed forms against brute force")
    parser.add_argument("--p", type=int, required=True, help="Prime p")
    parser.add_argument("--m", type=int, required=True, help="Exponent m")
    parser.add_argument("--k", type=int, default=1, help="1 for a Gauss sum, k >= 2 for a k-fold Jacobi sum")
    parser.add_argument("--reps", type=int, default=20, help="Repetitions per path (median is reported)")
    parser.add_argument("--term-guard", type=int, default=None, help="Largest brute-force sum")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    row = run_bench(args.p, args.m, args.k, args.reps, args.term_guard)
    writer = csv.DictWriter(sys.stdout, fieldnames=list(BenchRow.model_fields))
    writer.writeheader()
    writer.writerow(row.model_dump())
    return 0
