"""`verify`: run the verification suites and write a discrepancy report."""
import argparse
import logging
import sys

from charsum.config import get_settings

from ..schemas import SUITES, BPolicy, ReportFormat, SweepConfig
from ..services import run_sweep, write_report
from ._flags import int_list, str_list

logger = logging.getLogger(__name__)

# flag name -> SweepConfig field, for flags that were given
_FIELDS = {
    "primes": "primes",
    "max_modulus": "max_modulus",
    "jacobi_moduli": "jacobi_moduli",
    "triple_moduli": "triple_moduli",
    "k": "k_values",
    "b_policy": "b_policy",
    "sample_cap": "sample_cap",
    "triple_samples": "triple_samples",
    "tolerance": "tolerance",
    "jobs": "jobs",
    "term_guard": "term_guard",
    "seed": "seed",
    "suites": "suites",
    "output": "output",
    "format": "format",
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Cross-check every evaluation path on a grid")
    parser.add_argument("--primes", type=int_list, help="Primes for the Gauss suites (default 2,3,5,7,11,13)")
    parser.add_argument("--max-modulus", type=int, help="Largest p^m swept (default 20000)")
    parser.add_argument("--jacobi-moduli", type=int_list, help="Moduli of the pair, translation and top-case suites")
    parser.add_argument("--triple-moduli", type=int_list, help="Moduli of the k = 3 suite")
    parser.add_argument("--k", type=int_list, help="Jacobi k values to sweep, subset of 2,3")
    parser.add_argument("--b-policy", choices=[b.value for b in BPolicy], help="all p^n, or B in {1, p}")
    parser.add_argument("--sample-cap", type=int, help="Characters (or pairs) per modulus when sampling")
    parser.add_argument("--triple-samples", type=int, help="Random k = 3 tuples per modulus")
    parser.add_argument("--tolerance", type=float, help="Relative tolerance of numeric comparisons")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.add_argument("--term-guard", type=int, help="Largest brute-force Jacobi sum")
    parser.add_argument("--seed", type=int, help="Sampling seed")
    parser.add_argument("--suites", type=str_list, help=f"Subset of {','.join(SUITES)}")
    parser.add_argument("--output", help="Report path (default stdout)")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], help="csv or json lines")
    parser.set_defaults(handler=run)


def build_config(args: argparse.Namespace) -> SweepConfig:
    """SweepConfig from the given flags, with unset ones taken from settings."""
    settings = get_settings()
    values = dict(
        sample_cap=settings.sample_cap,
        triple_samples=settings.triple_samples,
        tolerance=settings.tolerance,
        jobs=settings.jobs,
        term_guard=settings.term_guard,
        seed=settings.seed,
    )
    for flag, field in _FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[field] = value
    return SweepConfig(**values)


def run(args: argparse.Namespace) -> int:
    config = build_config(args)
    records, summary = run_sweep(config)
    write_report(records, config.format, config.output)
    print(f"verify: {summary}", file=sys.stderr)
    if summary.failed:
        logger.warning(f"{summary.failed} comparisons failed")
        return 1
    return 0
