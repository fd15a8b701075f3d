"""
Unit group structure of Z/p^m.

For odd p the units are cyclic, generated by the smallest primitive root
mod p^2. For p = 2 and m >= 3 they are generated by -1 and 5. This module
builds the discrete-log tables against those generators and the constants
r and R_j that the closed forms consume:

    a^{p-1}      = 1 + r p        (odd p, r kept mod p)
    a^{phi(p^j)} = 1 + R_j p^j    (odd p, R_j kept mod p^m)
    5^{2^{j-2}}  = 1 + R_j 2^j    (p = 2, j >= 2)
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from typing import NamedTuple

import numpy as np
from sympy.ntheory import is_primitive_root

from charsum.arithmetic.modular import require_prime
from charsum.config import get_settings
from charsum.errors import InvalidArgumentError, NonUnitError, ResourceGuardError

logger = logging.getLogger(__name__)

TWO_ADIC_GENERATOR = 5


@dataclass(frozen=True)
class PrimePowerModulus:
    """A validated prime power q = p^m."""

    p: int
    m: int
    q: int = field(init=False)
    phi: int = field(init=False)

    def __post_init__(self):
        require_prime(self.p)
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidArgumentError(f"exponent must be an integer >= 1, got {self.m!r}")
        object.__setattr__(self, "q", self.p**self.m)
        object.__setattr__(self, "phi", self.p ** (self.m - 1) * (self.p - 1))

    def __str__(self) -> str:
        return f"{self.p}^{self.m}"


class UnitLog(NamedTuple):
    """Exponent data of a unit: x = (-1)^sign * a^exponent mod q (sign is 0 for odd p)."""

    sign: int
    exponent: int


@dataclass(frozen=True)
class UnitGroupContext:
    """
    Canonical generators, discrete-log tables and cached constants for one modulus.

    Immutable once built; share it freely between threads. Equality and hashing
    only look at the modulus.
    """

    modulus: PrimePowerModulus
    generator: int
    exponent_order: int  # order of the cyclic factor carrying the exponent c
    r: int | None = field(compare=False)
    rj: dict[int, int] = field(compare=False, repr=False)
    rj_inverse: dict[int, int] = field(compare=False, repr=False)
    phase_den: int = field(compare=False)  # N: every chi(x), e_q(x), epsilon and omega is e(s/N)
    log_sign: np.ndarray = field(compare=False, repr=False)
    log_exponent: np.ndarray = field(compare=False, repr=False)
    units: np.ndarray = field(compare=False, repr=False)
    exponent_logs: list[int] = field(compare=False, repr=False)  # log_exponent as a list, for scalar lookups
    sign_logs: list[int] = field(compare=False, repr=False)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def phi(self) -> int:
        return self.modulus.phi

    @property
    def min_j(self) -> int:
        """Smallest j for which R_j is defined."""
        return 2 if self.p == 2 else 1

    @classmethod
    def build(cls, modulus: PrimePowerModulus, max_table_size: int | None = None) -> "UnitGroupContext":
        """
        Build the discrete-log tables for a modulus.

        Args:
            modulus: The prime power q = p^m
            max_table_size: Largest q accepted (defaults to settings.max_table_size)

        Returns:
            The populated context
        """
        if max_table_size is None:
            max_table_size = get_settings().max_table_size
        p, m, q = modulus.p, modulus.m, modulus.q
        if q > max_table_size:
            raise ResourceGuardError(f"modulus {q} exceeds the discrete-log table guard {max_table_size}")

        log_sign = np.full(q, -1, dtype=np.int64)
        log_exponent = np.full(q, -1, dtype=np.int64)

        if p == 2:
            generator = TWO_ADIC_GENERATOR
            exponent_order = 2 ** (m - 2) if m >= 3 else 1
            x = 1
            for t in range(exponent_order):
                log_sign[x], log_exponent[x] = 0, t
                # -1 and 1 coincide mod 2
                if m >= 2:
                    log_sign[q - x], log_exponent[q - x] = 1, t
                x = x * generator % q
            r = None
        else:
            generator = find_primitive_root(p)
            exponent_order = modulus.phi
            x = 1
            for t in range(exponent_order):
                log_sign[x], log_exponent[x] = 0, t
                x = x * generator % q
            r = (pow(generator, p - 1, p * p) - 1) // p % p

        units = np.flatnonzero(log_exponent >= 0)
        min_j = 2 if p == 2 else 1
        rj = {j: _rj_residue(p, generator, m, j) for j in range(min_j, max(m, min_j) + 1)}
        rj_inverse = {j: pow(value, -1, q) for j, value in rj.items()}
        phase_den = math.lcm(8, q * (p - 1))

        logger.info(f"Built unit group context mod {modulus} (generator {generator}, {len(units)} units)")
        return cls(
            modulus=modulus,
            generator=generator,
            exponent_order=exponent_order,
            r=r,
            rj=rj,
            rj_inverse=rj_inverse,
            phase_den=phase_den,
            log_sign=log_sign,
            log_exponent=log_exponent,
            units=units,
            exponent_logs=log_exponent.tolist(),
            sign_logs=log_sign.tolist(),
        )


@lru_cache(maxsize=None)
def get_context(p: int, m: int) -> UnitGroupContext:
    """Get the shared context for p^m (built once per process)."""
    return UnitGroupContext.build(PrimePowerModulus(p, m))


# =============================================================================
# Operations
# =============================================================================

def find_primitive_root(p: int) -> int:
    """
    Smallest a >= 2 that is a primitive root mod p^2.

    Such an a generates the units mod p^m for every m >= 1, which makes the
    character labels c canonical across moduli and runs.
    """
    require_prime(p)
    if p == 2:
        raise InvalidArgumentError("2 has no primitive root mod 2^m for m >= 3; use the (-1, 5) generators")
    square = p * p
    for a in count(2):
        if a % p and is_primitive_root(a, square):
            return a


def unit_decompose(ctx: UnitGroupContext, x: int) -> UnitLog:
    """
    Discrete log of a unit against the canonical generators.

    Args:
        ctx: Unit group context for q
        x: Integer with gcd(x, q) = 1

    Returns:
        UnitLog (sign, exponent); sign is always 0 for odd p
    """
    x %= ctx.q
    exponent = int(ctx.log_exponent[x])
    if exponent < 0:
        raise NonUnitError(f"{x} is not a unit mod {ctx.q}")
    return UnitLog(int(ctx.log_sign[x]), exponent)


def compute_r(ctx: UnitGroupContext) -> int:
    """r mod p, defined by a^{p-1} = 1 + r p (odd p only)."""
    if ctx.p == 2:
        raise InvalidArgumentError("r is defined for odd p only")
    return ctx.r


def compute_Rj(ctx: UnitGroupContext, j: int) -> int:
    """
    R_j mod p^m.

    Args:
        ctx: Unit group context for p^m
        j: Level, j >= 1 for odd p and j >= 2 for p = 2

    Returns:
        R_j reduced mod p^m
    """
    if not isinstance(j, int) or j < ctx.min_j:
        raise InvalidArgumentError(f"R_j needs j >= {ctx.min_j} for p = {ctx.p}, got {j!r}")
    cached = ctx.rj.get(j)
    if cached is not None:
        return cached
    return _rj_residue(ctx.p, ctx.generator, ctx.m, j)


def _rj_residue(p: int, generator: int, m: int, j: int) -> int:
    # only R_j mod p^m is ever used, so p^{j+m} precision is enough
    pj = p**j
    exponent = 2 ** (j - 2) if p == 2 else p ** (j - 1) * (p - 1)
    power = pow(generator, exponent, pj * p**m)
    return (power - 1) // pj % p**m
