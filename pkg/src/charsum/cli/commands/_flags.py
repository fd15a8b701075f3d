"""argparse types shared by the subcommands."""
import argparse


def int_list(text: str) -> list[int]:
    """Parse "1,2,3" (an empty string gives [])."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def str_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]

