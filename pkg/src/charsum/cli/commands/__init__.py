"""CLI subcommands."""
from . import bench, gauss, jacobi, verify

__all__ = ["bench", "gauss", "jacobi", "verify"]
