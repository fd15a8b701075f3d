"""Modular arithmetic, unit groups, exact values and characters mod p^m."""
from .modular import epsilon, jacobi_symbol, mod_inverse, require_prime, valuation
from .values import (
    ExactValue,
    Method,
    NumericValue,
    SumResult,
    Value,
    approx_equal,
    deviation,
    divide_values,
    mixed_product,
    multiply_values,
    to_complex,
)
from .units import (
    PrimePowerModulus,
    UnitGroupContext,
    UnitLog,
    compute_r,
    compute_Rj,
    find_primitive_root,
    get_context,
    unit_decompose,
)
from .characters import (
    Character,
    character,
    conductor,
    conductor_brute,
    enumerate_characters,
    eval_character,
    is_primitive,
    make_character,
    multiply,
    product,
    reduce_to_modulus,
)

__all__ = [
    "epsilon",
    "jacobi_symbol",
    "mod_inverse",
    "require_prime",
    "valuation",
    "ExactValue",
    "Method",
    "NumericValue",
    "SumResult",
    "Value",
    "approx_equal",
    "deviation",
    "divide_values",
    "mixed_product",
    "multiply_values",
    "to_complex",
    "PrimePowerModulus",
    "UnitGroupContext",
    "UnitLog",
    "compute_r",
    "compute_Rj",
    "find_primitive_root",
    "get_context",
    "unit_decompose",
    "Character",
    "character",
    "conductor",
    "conductor_brute",
    "enumerate_characters",
    "eval_character",
    "is_primitive",
    "make_character",
    "multiply",
    "product",
    "reduce_to_modulus",
]
