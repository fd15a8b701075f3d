"""
charsum - Main Entry Point

Run with: python -m charsum.main <command> [flags]

Commands: gauss, jacobi, verify, bench. See --help on each.
"""

import sys

from charsum.cli.app import main as cli_main


def main() -> int:
    """Run the command-line application."""
    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
