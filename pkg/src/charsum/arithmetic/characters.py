"""
Multiplicative characters mod p^m.

A character is named by its exponent data against the canonical generators:

    odd p:           chi(a)  = e_{phi(p^m)}(c)
    p = 2, m >= 3:   chi(5)  = e_{2^{m-2}}(c),  chi(-1) = (-1)^e
    p = 2, m = 2:    chi(-1) = (-1)^e
    p = 2, m = 1:    principal only

c is stored in [0, order); the label used inside the closed forms is the
representative in [1, order], so c = 0 stands for c = order.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

import numpy as np

from charsum.arithmetic.modular import valuation
from charsum.arithmetic.units import UnitGroupContext, get_context
from charsum.arithmetic.values import ExactValue
from charsum.errors import InvalidArgumentError, NotReducibleError


@dataclass(frozen=True)
class Character:
    """A Dirichlet character mod p^m, extended by 0 on non-units."""

    ctx: UnitGroupContext
    exponent: int
    sign: int = 0

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def m(self) -> int:
        return self.ctx.m

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def label(self) -> int:
        """The exponent c as an integer in [1, order]."""
        return self.exponent or self.ctx.exponent_order

    @property
    def is_principal(self) -> bool:
        return self.exponent == 0 and self.sign == 0

    @cached_property
    def is_primitive(self) -> bool:
        """Conductor equals p^m (computed once per character)."""
        return conductor(self) == self.q

    @cached_property
    def _steps(self) -> tuple[int, int]:
        # turns over ctx.phase_den contributed by one step of each generator
        ctx = self.ctx
        return self.sign * (ctx.phase_den // 2), self.exponent * (ctx.phase_den // ctx.exponent_order)

    def turns(self, x: int) -> int | None:
        """chi(x) = e(s/N) with N = ctx.phase_den; returns s in [0, N), or None when p | x."""
        ctx = self.ctx
        x %= ctx.q
        t = ctx.exponent_logs[x]
        if t < 0:
            return None
        sign_step, exponent_step = self._steps
        return (sign_step * ctx.sign_logs[x] + exponent_step * t) % ctx.phase_den

    @cached_property
    def label_turns(self) -> int | None:
        """chi(c) at its own label c, as turns."""
        return self.turns(self.label)

    def rotation(self, x: int) -> Fraction | None:
        """chi(x) as a rotation s/N, or None when p | x."""
        s = self.turns(x)
        return None if s is None else Fraction(s, self.ctx.phase_den)

    def __call__(self, x: int) -> ExactValue:
        return eval_character(self, x)

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        return 1 if self.turns(-1) == 0 else -1

    def phase_numerators(self) -> tuple[np.ndarray, int]:
        """
        Integer phases of chi over all residues mod q.

        Returns:
            (numerators, den) so that chi(x) = e^{2 pi i num[x]/den} on units;
            entries at non-units are meaningless
        """
        order = self.ctx.exponent_order
        den = 2 * order
        nums = (self.sign * order * self.ctx.log_sign + 2 * self.exponent * self.ctx.log_exponent) % den
        return nums, den

    def values(self) -> np.ndarray:
        """chi(x) for x = 0..q-1 as a complex array (0 at non-units)."""
        nums, den = self.phase_numerators()
        phases = np.exp(2j * np.pi * nums / den)
        return np.where(self.ctx.log_exponent >= 0, phases, 0)

    def __mul__(self, other: "Character") -> "Character":
        return multiply(self, other)

    def conjugate(self) -> "Character":
        return make_character(self.ctx, -self.exponent, self.sign)

    def __str__(self) -> str:
        if self.p == 2:
            return f"chi[e={self.sign},c={self.exponent} mod {self.ctx.modulus}]"
        return f"chi[c={self.exponent} mod {self.ctx.modulus}]"


# =============================================================================
# Construction
# =============================================================================

def make_character(ctx: UnitGroupContext, exponent: int = 0, sign: int = 0) -> Character:
    """
    Build the character with the given exponent data.

    Args:
        ctx: Unit group context for p^m
        exponent: c, any integer (normalised into [0, order))
        sign: e in {0, 1}, chi(-1) = (-1)^e on the 2-power part; 0 for odd p

    Returns:
        The unique matching Character
    """
    if sign not in (0, 1):
        raise InvalidArgumentError(f"sign must be 0 or 1, got {sign!r}")
    if sign and (ctx.p != 2 or ctx.m < 2):
        raise InvalidArgumentError(f"a sign bit only exists for p = 2, m >= 2 (modulus {ctx.modulus})")
    return Character(ctx, exponent % ctx.exponent_order, sign)


def character(p: int, m: int, exponent: int = 0, sign: int = 0) -> Character:
    """Shorthand for make_character(get_context(p, m), exponent, sign)."""
    return make_character(get_context(p, m), exponent, sign)


def enumerate_characters(ctx: UnitGroupContext, primitive_only: bool = False) -> Iterator[Character]:
    """Yield all phi(q) characters mod q, optionally only the primitive ones."""
    signs = (0, 1) if ctx.p == 2 and ctx.m >= 2 else (0,)
    for sign in signs:
        for exponent in range(ctx.exponent_order):
            chi = Character(ctx, exponent, sign)
            if not primitive_only or is_primitive(chi):
                yield chi


# =============================================================================
# Operations
# =============================================================================

def eval_character(chi: Character, x: int) -> ExactValue:
    """chi(x) as an exact unit-modulus value, or exact zero when p | x."""
    s = chi.turns(x)
    if s is None:
        return ExactValue.zero_of(chi.p)
    return ExactValue.from_turns(chi.p, 0, s, chi.ctx.phase_den)


def multiply(chi1: Character, chi2: Character) -> Character:
    """Pointwise product, computed by adding exponent data."""
    if chi1.ctx != chi2.ctx:
        raise InvalidArgumentError(f"cannot multiply characters mod {chi1.ctx.modulus} and mod {chi2.ctx.modulus}")
    return make_character(chi1.ctx, chi1.exponent + chi2.exponent, chi1.sign ^ chi2.sign)


def product(chars: "list[Character] | tuple[Character, ...]") -> Character:
    """chi_1 * ... * chi_k."""
    if not chars:
        raise InvalidArgumentError("product of no characters")
    result = chars[0]
    for chi in chars[1:]:
        result = multiply(result, chi)
    return result


def conductor(chi: Character) -> int:
    """Smallest p^f through which chi factors, from the exponent data."""
    p, m = chi.p, chi.m
    if p == 2:
        if m >= 3 and chi.exponent:
            return 2 ** (m - valuation(chi.exponent, 2))
        return 4 if chi.sign else 1
    if chi.exponent == 0:
        return 1
    return p ** (m - valuation(chi.exponent, p))


def conductor_brute(chi: Character) -> int:
    """Conductor by the definition: smallest p^f with chi trivial on units = 1 mod p^f."""
    nums, _ = chi.phase_numerators()
    units = chi.ctx.units
    unit_phases = nums[units]
    for f in range(chi.m + 1):
        kernel = units % chi.p**f == 1 % chi.p**f
        if not np.any(unit_phases[kernel]):
            return chi.p**f
    return chi.q


def is_primitive(chi: Character) -> bool:
    """True when chi is not induced from a smaller modulus (conductor = p^m)."""
    return chi.is_primitive


def reduce_to_modulus(chi: Character, target_exponent: int) -> Character:
    """
    The character mod p^j that induces chi.

    Args:
        chi: Character mod p^m
        target_exponent: j with 1 <= j <= m

    Returns:
        Character mod p^j agreeing with chi on every unit mod p^m
    """
    p, m, j = chi.p, chi.m, target_exponent
    if not 1 <= j <= m:
        raise InvalidArgumentError(f"target exponent must lie in [1, {m}], got {j}")
    if p**j % conductor(chi):
        raise NotReducibleError(f"{chi} has conductor {conductor(chi)}, which does not divide {p}^{j}")

    target = get_context(p, j)
    if p == 2:
        if j >= 3:
            return make_character(target, chi.exponent // 2 ** (m - j), chi.sign)
        if j == 2:
            return make_character(target, 0, chi.sign)
        return make_character(target)
    return make_character(target, chi.exponent // p ** (m - j))
