"""
Gauss sums G(chi, p^m) = sum_{x mod p^m} chi(x) e_{p^m}(x).

Two paths: a vectorised brute-force oracle over the units, and the closed
form for m >= 2. For primitive chi and j at or above its minimum,

    odd p:          p^{m/2} chi(y) e_{p^m}(y) (-2rc/p)^m eps_{p^m}
    p = 2, m >= 5:  2^{m/2} chi(y) e_{2^m}(y) (2/c)^m omega^c

with y = -c R_j^{-1} mod p^m. For p^m = 27 the odd-p value is multiplied
by e_3(-c). Imprimitive characters give 0, and p = 2, m in {2, 3, 4} have
their own short formulas. The mod p phase (m = 1) has no
closed form here; those sums always come from the oracle.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from charsum.arithmetic.characters import Character, is_primitive
from charsum.arithmetic.modular import epsilon_quarters, jacobi_symbol, mod_inverse
from charsum.arithmetic.units import UnitGroupContext, compute_Rj
from charsum.arithmetic.values import OMEGA, ExactValue, Method, NumericValue, SumResult, Value
from charsum.config import get_settings
from charsum.errors import InvalidArgumentError, ResourceGuardError, UnsupportedRegimeError

logger = logging.getLogger(__name__)

GAUSS_METHODS = ("auto", "brute", "closed")


def additive_character(p: int, y: int, q: int) -> ExactValue:
    """e_q(y) = e^{2 pi i y/q}."""
    return ExactValue.root_of_unity(p, Fraction(y % q, q))


def min_j(p: int, m: int) -> int:
    """Smallest admissible level j for the closed form."""
    return math.ceil(m / 2) + (2 if p == 2 else 0)


# =============================================================================
# Evaluation paths
# =============================================================================

def gauss_brute(chi: Character, term_guard: int | None = None) -> SumResult:
    """
    Direct summation of chi(x) e_q(x) over the units mod q.

    Args:
        chi: Character mod q
        term_guard: Largest q accepted (defaults to settings.gauss_term_guard)

    Returns:
        Numeric SumResult
    """
    guard = term_guard or get_settings().gauss_term_guard
    q = chi.q
    if q > guard:
        raise ResourceGuardError(f"brute Gauss sum mod {q} exceeds the term guard {guard}")

    units = chi.ctx.units
    nums, den = chi.phase_numerators()
    angles = 2 * np.pi * (nums[units] / den + units / q)
    total = complex(np.exp(1j * angles).sum())
    return SumResult(NumericValue(total, len(units)), Method.brute, f"{len(units)} unit terms")


def gauss_closed(chi: Character, j: int | None = None) -> SumResult:
    """
    Closed-form Gauss sum for m >= 2.

    Args:
        chi: Character mod p^m
        j: Level of R_j to use (defaults to the smallest admissible one)

    Returns:
        Exact SumResult
    """
    p, m = chi.p, chi.m
    if m == 1:
        raise UnsupportedRegimeError(f"no closed form for the mod {p} Gauss sum; use the brute path")
    if not is_primitive(chi):
        return SumResult(ExactValue.zero_of(p), Method.gauss_closed, "imprimitive character")
    if p == 2 and m <= 4:
        return SumResult(_small_two_power(chi), Method.gauss_closed, f"special form mod 2^{m}")

    lowest = min_j(p, m)
    j = lowest if j is None else j
    if j < lowest:
        raise InvalidArgumentError(f"j must be >= {lowest} for modulus {chi.ctx.modulus}, got {j}")

    ctx = chi.ctx
    q, c, big = ctx.q, chi.label, ctx.phase_den
    y = -c * _rj_inverse(ctx, j) % q
    turns = chi.turns(y) + y * (big // q)
    if p == 2:
        sign = jacobi_symbol(2, c)
        turns += c * (big // 8)
    else:
        sign = jacobi_symbol(-2 * ctx.r * c, p)
        turns += epsilon_quarters(p, m) * (big // 4)
        if p == 3 and m == 3:
            # mod 27 the main formula is off by e_3(c) for every primitive chi
            turns -= c * (big // 3)
    if sign < 0 and m % 2:
        turns += big // 2
    return SumResult(ExactValue.from_turns(p, m, turns, big), Method.gauss_closed, f"j={j}")


def _rj_inverse(ctx: UnitGroupContext, j: int) -> int:
    cached = ctx.rj_inverse.get(j)
    if cached is not None:
        return cached
    return mod_inverse(compute_Rj(ctx, j), ctx.q)


def _small_two_power(chi: Character) -> ExactValue:
    # primitive characters mod 4, 8 and 16
    m = chi.m
    if m == 2:
        return ExactValue(2, half_exp=2, rotation=Fraction(1, 4))
    if m == 3:
        return ExactValue(2, half_exp=3, rotation=OMEGA * (1 - chi.parity()))
    c = chi.label
    return ExactValue.power_of_p(2, 4) * chi(-c) * additive_character(2, -c, 16)


def gauss_eval(chi: Character, method: str = "auto", term_guard: int | None = None) -> SumResult:
    """
    Evaluate G(chi, p^m) by the requested path.

    auto prefers the closed form for m >= 2 and the oracle for m = 1.
    """
    if method not in GAUSS_METHODS:
        raise InvalidArgumentError(f"unknown Gauss method {method!r}; expected one of {GAUSS_METHODS}")
    if method == "brute" or (method == "auto" and chi.m == 1):
        result = gauss_brute(chi, term_guard)
    else:
        result = gauss_closed(chi)
    logger.debug(f"G({chi}) via {result.method.value}: {result.value}")
    return result


# =============================================================================
# Helpers for the Jacobi quotient forms
# =============================================================================

def gauss_value(chi: Character) -> Value:
    """G(chi, p^m): exact for m >= 2, from the oracle (p terms) for m = 1."""
    return gauss_eval(chi).value


def gauss_conjugate(chi: Character) -> Value:
    """conj G(chi, p^m), computed as chi-bar(-1) G(chi-bar, p^m)."""
    bar = chi.conjugate()
    value = gauss_value(bar)
    if isinstance(value, NumericValue):
        return NumericValue(bar.parity() * value.value, value.terms)
    return ExactValue.from_sign(chi.p, bar.parity()) * value
