"""
Command-line application.

Assembles the subcommands and maps errors to stable exit codes:

    0  success
    1  verify found failing comparisons
    2  invalid flags or arguments
    3  resource guard exceeded
    4  unsupported regime or unmet precondition
    5  I/O failure
"""
import argparse
import logging
import sys

from pydantic import ValidationError

from charsum import __version__
from charsum.config import get_settings
from charsum.errors import (
    InvalidArgumentError,
    NotReducibleError,
    PreconditionError,
    ResourceGuardError,
    UnsupportedRegimeError,
)
from .commands import bench, gauss, jacobi, verify

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_INVALID = 2
EXIT_GUARD = 3
EXIT_REGIME = 4
EXIT_IO = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charsum",
        description="Gauss and Jacobi sums over prime power moduli",
    )
    parser.add_argument("--version", action="version", version=f"charsum {__version__}")
    parser.add_argument("--log-level", default=None, help="Logging level (default from CHARSUM_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (gauss, jacobi, verify, bench):
        command.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse flags, run the chosen command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags and 0 on --help/--version
        return e.code if isinstance(e.code, int) else EXIT_OK

    level = (args.log_level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        print(f"charsum: error: unknown log level {level!r}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logger = logging.getLogger(__name__)

    try:
        return args.handler(args)
    except (InvalidArgumentError, ValidationError) as e:
        logger.error(f"invalid argument: {e}")
        return EXIT_INVALID
    except ResourceGuardError as e:
        logger.error(f"resource guard: {e}")
        return EXIT_GUARD
    except (UnsupportedRegimeError, PreconditionError, NotReducibleError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_REGIME
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_IO
