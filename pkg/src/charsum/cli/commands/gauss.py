"""`gauss`: evaluate one Gauss sum G(chi, p^m)."""
import argparse

from charsum.sums import GAUSS_METHODS

from ..schemas import OutputFormat
from ..services import evaluate_gauss


def register(subparsers) -> None:
    parser = subparsers.add_parser("gauss", help="Evaluate G(chi, p^m)")
    parser.add_argument("--p", type=int, required=True, help="Prime p")
    parser.add_argument("--m", type=int, required=True, help="Exponent m >= 1")
    parser.add_argument("--c", type=int, default=0, help="Exponent c of chi against the canonical generator")
    parser.add_argument("--sign", type=int, default=0, choices=(0, 1), help="chi(-1) = (-1)^sign (p = 2 only)")
    parser.add_argument("--method", choices=GAUSS_METHODS, default="auto")
    parser.add_argument("--term-guard", type=int, default=None, help="Largest q for the brute path")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.json.value)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    report = evaluate_gauss(args.p, args.m, args.c, args.sign, args.method, args.term_guard)
    print(report.model_dump_json() if args.format == OutputFormat.json.value else report.to_text())
    return 0
