"""`jacobi`: evaluate one generalised Jacobi sum J_B(chi_1, ..., chi_k, p^m)."""
import argparse

from charsum.sums import JACOBI_METHODS

from ..schemas import OutputFormat
from ..services import evaluate_jacobi
from ._flags import int_list


def register(subparsers) -> None:
    parser = subparsers.add_parser("jacobi", help="Evaluate J_B(chi_1, ..., chi_k, p^m)")
    parser.add_argument("--p", type=int, required=True, help="Prime p")
    parser.add_argument("--m", type=int, required=True, help="Exponent m >= 1")
    parser.add_argument("--chars", type=int_list, required=True, help="Exponents c_1,...,c_k")
    parser.add_argument("--signs", type=int_list, default=None, help="Sign bits e_1,...,e_k (p = 2 only)")
    parser.add_argument("--B", type=int, default=1, help="Target B (taken mod p^m)")
    parser.add_argument("--method", choices=JACOBI_METHODS, default="auto")
    parser.add_argument("--term-guard", type=int, default=None, help="Largest q^(k-1) for the brute path")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.json.value)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    report = evaluate_jacobi(args.p, args.m, args.chars, args.signs, args.B, args.method, args.term_guard)
    print(report.model_dump_json() if args.format == OutputFormat.json.value else report.to_text())
    return 0
