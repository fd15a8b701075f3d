"""
Scalar modular helpers used by the closed forms.

Jacobi symbols, inverses, p-adic valuations and the fourth root of unity
epsilon_{p^m}. Roots of unity are returned as rotations: the Fraction s/N
stands for e^{2 pi i s/N}.
"""

from fractions import Fraction
from functools import lru_cache

from sympy import isprime, multiplicity
from sympy.functions.combinatorial.numbers import jacobi_symbol as _sympy_jacobi_symbol

from charsum.errors import InvalidArgumentError, NonInvertibleError


def require_prime(p: int) -> None:
    """Raise InvalidArgumentError unless p is a prime."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InvalidArgumentError(f"{p!r} is not a prime")


def jacobi_symbol(num: int, den: int) -> int:
    """
    Jacobi symbol (num/den) for odd positive den.

    Args:
        num: Any integer (reduced mod den); (2/n) is the usual special case
        den: Odd positive integer

    Returns:
        -1, 0 or +1
    """
    if den <= 0 or den % 2 == 0:
        raise InvalidArgumentError(f"Jacobi symbol needs an odd positive denominator, got {den}")
    return _reduced_jacobi(num % den, den)


@lru_cache(maxsize=65536)
def _reduced_jacobi(num: int, den: int) -> int:
    return int(_sympy_jacobi_symbol(num, den))


def mod_inverse(x: int, q: int) -> int:
    """Return the unique y in [1, q) with x*y = 1 mod q."""
    try:
        return pow(x, -1, q)
    except ValueError as e:
        raise NonInvertibleError(f"{x} is not invertible mod {q}") from e


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise InvalidArgumentError("valuation of 0 is infinite")
    return int(multiplicity(p, abs(x)))


@lru_cache(maxsize=None)
def epsilon_quarters(p: int, m: int) -> int:
    """epsilon_{p^m} = i^t; returns t (0 when p^m = 1 mod 4, 1 when p^m = 3 mod 4)."""
    require_prime(p)
    if p == 2:
        raise InvalidArgumentError("epsilon is defined for odd p only")
    if m < 1:
        raise InvalidArgumentError(f"exponent must be >= 1, got {m}")
    return 0 if pow(p, m, 4) == 1 else 1


def epsilon(p: int, m: int) -> Fraction:
    """
    epsilon_{p^m} as a rotation: 1 when p^m = 1 mod 4, i when p^m = 3 mod 4.

    p = 2 has no epsilon; omega = e^{pi i/4} plays its part there.
    """
    return Fraction(epsilon_quarters(p, m), 4)
