"""Gauss and Jacobi sum evaluators."""
from .gauss import GAUSS_METHODS, gauss_brute, gauss_closed, gauss_conjugate, gauss_eval, gauss_value
from .jacobi import (
    JACOBI_METHODS,
    JacobiQuery,
    jacobi_brute,
    jacobi_closed,
    jacobi_direct_k2,
    jacobi_eval,
    jacobi_top_case,
    jacobi_vanishes,
    jacobi_via_gauss,
    make_query,
    normalize_B,
    pair_factor,
)

__all__ = [
    "GAUSS_METHODS",
    "gauss_brute",
    "gauss_closed",
    "gauss_conjugate",
    "gauss_eval",
    "gauss_value",
    "JACOBI_METHODS",
    "JacobiQuery",
    "jacobi_brute",
    "jacobi_closed",
    "jacobi_direct_k2",
    "jacobi_eval",
    "jacobi_top_case",
    "jacobi_vanishes",
    "jacobi_via_gauss",
    "make_query",
    "normalize_B",
    "pair_factor",
]
