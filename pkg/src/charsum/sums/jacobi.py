"""
Generalised Jacobi sums

    J_B(chi_1, ..., chi_k, p^m) = sum over x_1 + ... + x_k = B (mod p^m)
                                  of chi_1(x_1) ... chi_k(x_k).

Evaluation paths:
    brute     nested summation over x_1..x_{k-1} (x_k = B - sum)
    closed    explicit evaluation for m >= n + 2 (B = p^n B')
    quotient  products and quotients of Gauss sums, any m > n
    direct    characteristic-equation method for k = 2, odd p
    top case  B = 0 mod p^m, reduced to a (k-1)-fold sum
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian

import numpy as np

from charsum.arithmetic.characters import (
    Character,
    character,
    conductor,
    is_primitive,
    product,
    reduce_to_modulus,
)
from charsum.arithmetic.modular import epsilon, epsilon_quarters, jacobi_symbol, mod_inverse, valuation
from charsum.arithmetic.units import UnitGroupContext
from charsum.arithmetic.values import (
    I_ROTATION,
    OMEGA,
    ExactValue,
    Method,
    NumericValue,
    SumResult,
    mixed_product,
)
from charsum.config import get_settings
from charsum.errors import (
    InvalidArgumentError,
    PreconditionError,
    ResourceGuardError,
    UnsupportedRegimeError,
)
from charsum.sums.gauss import gauss_conjugate, gauss_value

logger = logging.getLogger(__name__)

JACOBI_METHODS = ("auto", "brute", "closed", "quotient", "direct")

# p = 2 cells with m >= n + 2 that no stated display covers
_UNCOVERED_TWO_ADIC = {(2, 0), (4, 0)}


@dataclass(frozen=True)
class JacobiQuery:
    """k characters sharing one modulus p^m, and the target B (taken mod p^m)."""

    chars: tuple[Character, ...]
    B: int = 1

    def __post_init__(self):
        chars = tuple(self.chars)
        if not chars:
            raise InvalidArgumentError("a Jacobi sum needs at least one character")
        ctx = chars[0].ctx
        if any(chi.ctx != ctx for chi in chars):
            raise InvalidArgumentError("all characters of a Jacobi sum must share one modulus")
        object.__setattr__(self, "chars", chars)
        object.__setattr__(self, "B", self.B % ctx.q)

    @cached_property
    def ctx(self) -> UnitGroupContext:
        return self.chars[0].ctx

    @cached_property
    def p(self) -> int:
        return self.ctx.p

    @cached_property
    def m(self) -> int:
        return self.ctx.m

    @cached_property
    def q(self) -> int:
        return self.ctx.q

    @cached_property
    def k(self) -> int:
        return len(self.chars)

    @cached_property
    def n(self) -> int:
        """Valuation of B; m when B = 0 mod p^m."""
        return self.m if self.B == 0 else valuation(self.B, self.p)

    @cached_property
    def b_unit(self) -> int:
        """B' = B / p^n mod p^m (1 when B = 0)."""
        return 1 if self.B == 0 else self.B // self.p**self.n

    @cached_property
    def product(self) -> Character:
        return product(self.chars)

    @cached_property
    def product_conductor(self) -> int:
        return conductor(self.product)

    @cached_property
    def all_primitive(self) -> bool:
        return all(is_primitive(chi) for chi in self.chars)

    @cached_property
    def primitive_index(self) -> int:
        """Index of the first character primitive mod p^m (PreconditionError when none is)."""
        return _first_primitive(self.chars)

    @cached_property
    def vanishes(self) -> bool:
        """jacobi_vanishes(self), computed once."""
        return jacobi_vanishes(self)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(chi.label for chi in self.chars)

    @cached_property
    def v(self) -> int | None:
        """(c_1 + ... + c_k) / p^n when the division is exact."""
        total = sum(self.labels)
        pn = self.p**self.n
        return total // pn if total % pn == 0 else None

    def with_chars(self, chars) -> "JacobiQuery":
        return JacobiQuery(tuple(chars), self.B)

    def __str__(self) -> str:
        return f"J_{self.B}({', '.join(str(chi) for chi in self.chars)})"


def make_query(p: int, m: int, exponents, signs=None, B: int = 1) -> JacobiQuery:
    """Build a query from exponent (and, for p = 2, sign) tuples."""
    signs = signs or [0] * len(exponents)
    if len(signs) != len(exponents):
        raise InvalidArgumentError(f"{len(exponents)} exponents but {len(signs)} signs")
    return JacobiQuery(tuple(character(p, m, c, e) for c, e in zip(exponents, signs)), B)


def _first_primitive(chars) -> int:
    for i, chi in enumerate(chars):
        if is_primitive(chi):
            return i
    raise PreconditionError("at least one character must be primitive mod p^m")


# =============================================================================
# Brute force
# =============================================================================

def jacobi_brute(query: JacobiQuery, term_guard: int | None = None) -> SumResult:
    """
    Nested summation of the defining series.

    Args:
        query: The Jacobi sum to evaluate
        term_guard: Largest q^{k-1} accepted (defaults to settings.term_guard)

    Returns:
        Numeric SumResult carrying the term count q^{k-1}
    """
    guard = term_guard or get_settings().term_guard
    q, k, B = query.q, query.k, query.B
    terms = q ** (k - 1)
    if terms > guard:
        raise ResourceGuardError(f"brute Jacobi sum needs {terms} terms, guard is {guard}")

    values = [chi.values() for chi in query.chars]
    if k == 1:
        return SumResult(NumericValue(complex(values[0][B]), 1), Method.brute, "single term")

    # innermost pair: sum over x_{k-1}, with x_k = r - x_{k-1}
    penultimate, last = values[-2], values[-1]
    reflected = last[(-np.arange(q)) % q]  # reflected[x] = chi_k(-x)
    inner_cache: dict[int, complex] = {}

    def inner(r: int) -> complex:
        if r not in inner_cache:
            inner_cache[r] = complex(np.dot(penultimate, np.roll(reflected, r)))
        return inner_cache[r]

    units = query.ctx.units.tolist()
    outer = [v.tolist() for v in values[:-2]]
    total = 0j
    for xs in cartesian(units, repeat=k - 2):
        weight = complex(1)
        for vals, x in zip(outer, xs):
            weight *= vals[x]
        total += weight * inner((B - sum(xs)) % q)
    return SumResult(NumericValue(total, terms), Method.brute, f"{terms} terms")


# =============================================================================
# Reductions
# =============================================================================

def normalize_B(query: JacobiQuery) -> tuple[JacobiQuery, ExactValue]:
    """
    Rewrite J_B as chi_1...chi_k(B') J_{p^n} (x_i -> B' x_i).

    Returns:
        (query with B = p^n, exact prefactor chi_1...chi_k(B')); B = 0 is
        returned unchanged with prefactor 1
    """
    if query.B == 0:
        return query, ExactValue.one(query.p)
    b_unit = query.b_unit
    if b_unit == 1:
        return query, ExactValue.one(query.p)
    reduced = JacobiQuery(query.chars, query.p**query.n)
    return reduced, query.product(b_unit)


def jacobi_top_case(query: JacobiQuery) -> SumResult:
    """
    J_{p^m}: phi(p^m) chi_k(-1) J(chi_1..chi_{k-1}) for a principal product, else 0.
    """
    if query.B != 0:
        raise PreconditionError(f"top case needs B = 0 mod {query.q}, got B = {query.B}")
    if query.k < 2:
        raise PreconditionError("top case needs k >= 2")
    p = query.p
    if not query.product.is_principal:
        return SumResult(ExactValue.zero_of(p), Method.top_case, "product is not principal")

    inner = jacobi_eval(JacobiQuery(query.chars[:-1], 1))
    phi = ExactValue(p, scale=query.ctx.phi)
    value = mixed_product([phi, query.chars[-1](-1), inner.value])
    return SumResult(value, Method.top_case, f"phi(q) chi_k(-1) J_1 (inner via {inner.method.value})")


def jacobi_vanishes(query: JacobiQuery) -> bool:
    """
    Zero predicate for m >= 2 with at least one primitive character.

    n <= m - 2: zero iff some chi_i is imprimitive or the product does not
    have conductor p^{m-n}. n = m - 1: zero iff some chi_i is imprimitive or
    the product is not a mod p character. B = 0: zero iff the product is not
    principal.
    """
    if query.m < 2:
        raise UnsupportedRegimeError("the vanishing criterion needs m >= 2")
    query.primitive_index  # PreconditionError when no chi_i is primitive
    if query.B == 0:
        return not query.product.is_principal
    if not query.all_primitive:
        return True
    p, m, n = query.p, query.m, query.n
    if n == m - 1:
        return p % query.product_conductor != 0
    return query.product_conductor != p ** (m - n)


# =============================================================================
# Closed form (m >= n + 2)
# =============================================================================

def jacobi_closed(query: JacobiQuery) -> SumResult:
    """
    Explicit evaluation of J_B for m >= n + 2 with at least one primitive character.

        J_{p^n} = p^{(m(k-1)+n)/2} chi_1(c_1)...chi_k(c_k) / chi_1...chi_k(v) * delta

    with v = (c_1 + ... + c_k)/p^n, c_i the labels in [1, order].
    """
    p, m, k = query.p, query.m, query.k
    if k < 2:
        raise PreconditionError("the closed form needs k >= 2")
    n = query.n
    if n > m - 2:
        raise UnsupportedRegimeError(f"closed form needs m >= n + 2 (m={m}, n={n})")
    query.primitive_index  # PreconditionError when no chi_i is primitive
    if p == 2 and (m, n) in _UNCOVERED_TWO_ADIC:
        raise UnsupportedRegimeError(f"no stated closed form for p=2, m={m}, n={n}")

    if query.vanishes:
        return SumResult(ExactValue.zero_of(p), Method.jacobi_closed, "vanishing criterion")

    v = query.v
    if v is None:
        raise AssertionError(f"labels of {query} are not divisible by p^n")
    if p == 2:
        core, notes = _two_adic_closed(query, v)
    else:
        core, notes = _odd_closed(query, v), "odd p"
    if query.b_unit != 1:
        _, prefactor = normalize_B(query)
        core = prefactor * core
    return SumResult(core, Method.jacobi_closed, notes)


def _ratio_turns(query: JacobiQuery, v: int) -> int:
    """chi_1(c_1)...chi_k(c_k) / chi_1...chi_k(v) as turns over ctx.phase_den."""
    denominator = query.product.turns(v)
    if denominator is None:
        raise AssertionError(f"v={v} is not a unit mod {query.q} for {query}")
    total = -denominator
    for chi in query.chars:
        total += chi.label_turns
    return total


def _character_ratio(query: JacobiQuery, v: int) -> ExactValue:
    return ExactValue.from_turns(query.p, 0, _ratio_turns(query, v), query.ctx.phase_den)


def _odd_closed(query: JacobiQuery, v: int) -> ExactValue:
    p, m, k, n = query.p, query.m, query.k, query.n
    ctx = query.ctx
    big = ctx.phase_den
    half_exp = m * (k - 1) + n

    # delta = (-2r/p)^{m(k-1)+n} (v/p)^{m-n} (c_1...c_k/p)^m eps_{p^m}^k / eps_{p^{m-n}}
    turns = _ratio_turns(query, v)
    turns += (k * epsilon_quarters(p, m) - epsilon_quarters(p, m - n)) * (big // 4)
    flips = 0
    if half_exp % 2 and jacobi_symbol(-2 * ctx.r, p) < 0:
        flips += 1
    if (m - n) % 2 and jacobi_symbol(v, p) < 0:
        flips += 1
    if m % 2 and jacobi_symbol(math.prod(query.labels), p) < 0:
        flips += 1
    return ExactValue.from_turns(p, half_exp, turns + flips * (big // 2), big)


def _two_adic_closed(query: JacobiQuery, v: int) -> tuple[ExactValue, str]:
    m, k, n = query.m, query.k, query.n
    chars = query.chars
    magnitude = ExactValue.power_of_p(2, m * (k - 1) + n)
    parities = [chi.parity() for chi in chars]
    prod_parity = query.product.parity()

    if (m, n) == (3, 0):
        ell = parities.count(-1)
        return ExactValue(2, half_exp=3 * (k - 1), scale=(-1) ** (ell // 2)), f"mod 8, l={ell}"
    if (m, n) == (3, 1):
        rotation = 3 * I_ROTATION + OMEGA * (k - sum(parities))
        return magnitude * ExactValue.root_of_unity(2, rotation), "m=3, n=1"
    if (m, n) == (4, 1):
        value = magnitude * ExactValue.root_of_unity(2, OMEGA * (prod_parity - 1 - v))
        for chi in chars:
            value = value * chi(-chi.label)
        return value, "m=4, n=1"
    if (m, n) == (4, 2):
        value = magnitude * ExactValue.root_of_unity(2, I_ROTATION * (1 - v))
        for chi in chars:
            value = value * chi(chi.label)
        return value, "m=4, n=2"

    # m >= 5
    d = m - n
    if d == 2 and v % 2 == 0:
        raise UnsupportedRegimeError(f"p=2, m-n=2 with even v={v} has no stated closed form")
    c_product = math.prod(query.labels)
    delta = (
        ExactValue.from_sign(2, jacobi_symbol(2, v)) ** d
        * ExactValue.from_sign(2, jacobi_symbol(2, c_product)) ** m
        * ExactValue.root_of_unity(2, OMEGA * ((2**n - 1) * v))
    )
    notes = f"m-n={d}"
    if d == 4:
        delta = delta * ExactValue.from_sign(2, prod_parity) * ExactValue.root_of_unity(2, OMEGA * 2 * v)
    elif d == 3:
        # reduces to omega^{1 + chi(-1)} when v = 1 mod 4
        delta = (
            delta
            * query.product(v)
            * ExactValue.from_sign(2, jacobi_symbol(2, v))
            * ExactValue.root_of_unity(2, OMEGA * (2 * v - 1 + prod_parity))
        )
    elif d == 2:
        # reduces to omega when v = 1 mod 8
        delta = delta * ExactValue.root_of_unity(2, OMEGA * v)
    return magnitude * _character_ratio(query, v) * delta, notes


# =============================================================================
# Gauss quotient (m > n)
# =============================================================================

def jacobi_via_gauss(query: JacobiQuery) -> SumResult:
    """
    J_{p^n} from Gauss sums, with chi_k primitive mod p^m:

        p^n conj G(chi_1...chi_k, p^{m-n}) / conj G(chi_k, p^m) * prod_{i<k} G(chi_i, p^m)

    or the symmetric form prod G(chi_i, p^m) / G(chi_1...chi_k, p^{m-n}) when
    every character and the product mod p^{m-n} are primitive. Mod p Gauss
    sums come from the oracle, which makes the result numeric.
    """
    if query.B == 0:
        return jacobi_top_case(query)
    p, m, n = query.p, query.m, query.n
    _, prefactor = normalize_B(query)

    chars = list(query.chars)
    chars.append(chars.pop(_first_primitive(chars)))
    prod = product(chars)
    d = m - n
    if p**d % conductor(prod):
        return SumResult(ExactValue.zero_of(p), Method.gauss_quotient, f"product is not a mod {p}^{d} character")

    reduced = reduce_to_modulus(prod, d)
    if all(is_primitive(chi) for chi in chars) and is_primitive(reduced):
        value = mixed_product([gauss_value(chi) for chi in chars], [gauss_value(reduced)])
        notes = "symmetric form"
    else:
        factors = [ExactValue.power_of_p(p, 2 * n), gauss_conjugate(reduced)]
        factors += [gauss_value(chi) for chi in chars[:-1]]
        value = mixed_product(factors, [gauss_conjugate(chars[-1])])
        notes = "asymmetric form"
    return SumResult(mixed_product([prefactor, value]), Method.gauss_quotient, notes)


# =============================================================================
# Direct method (k = 2, odd p)
# =============================================================================

def jacobi_direct_k2(query: JacobiQuery) -> SumResult:
    """
    J_b(chi_1, chi_2) through the characteristic equation

        c_1 + c_2 - c_1 b x = 0 mod p^{floor((m+n)/2) + 1},  p does not divide x(bx - 1),

    whose solution x_0 = ((c_1 + c_2)/p^n) c_1^{-1} b'^{-1} gives

        J_b = p^{(m+n)/2} conj(chi_1 chi_2)(x_0) chi_2(b x_0 - 1) (-2 c_2 r b' x_0 / p)^{m-n} eps_{p^{m-n}}.

    No solution (p | c_2, or p^n not exactly dividing c_1 + c_2) means J_b = 0.
    """
    p, m, q = query.p, query.m, query.q
    if p == 2:
        raise UnsupportedRegimeError("the direct method is stated for odd p")
    if query.k != 2:
        raise InvalidArgumentError(f"the direct method needs k = 2, got k = {query.k}")
    n = query.n
    if n > m - 2:
        raise UnsupportedRegimeError(f"direct method needs m >= n + 2 (m={m}, n={n})")

    chi1, chi2 = query.chars
    if not is_primitive(chi1):
        chi1, chi2 = chi2, chi1
        if not is_primitive(chi1):
            raise PreconditionError("at least one character must be primitive mod p^m")
    c1, c2 = chi1.label, chi2.label
    if c2 % p == 0:
        return SumResult(ExactValue.zero_of(p), Method.direct_k2, "case (i): p | c_2")
    total = c1 + c2
    if valuation(total, p) != n:
        return SumResult(ExactValue.zero_of(p), Method.direct_k2, "no solution of the characteristic equation")

    b, b_unit = query.B, query.b_unit
    w = total // p**n
    x0 = w * mod_inverse(c1, q) * mod_inverse(b_unit, q) % q
    level = p ** ((m + n) // 2 + 1)
    if (total - c1 * b * x0) % level or x0 % p == 0 or (b * x0 - 1) % p == 0:
        raise AssertionError(f"x0={x0} does not solve the characteristic equation for {query}")

    pair = chi1 * chi2
    value = (
        ExactValue.power_of_p(p, m + n)
        * pair.conjugate()(x0)
        * chi2(b * x0 - 1)
        * ExactValue.from_sign(p, jacobi_symbol(-2 * c2 * query.ctx.r * b_unit * x0, p)) ** (m - n)
        * ExactValue.root_of_unity(p, epsilon(p, m - n))
    )
    case = "case (ii)" if n == 0 else "case (iii)"
    return SumResult(value, Method.direct_k2, f"{case}, x0={x0}")


def pair_factor(chi1: Character, chi2: Character) -> ExactValue:
    """
    J_b(chi_1, chi_2) / chi_1 chi_2(b) for a unit b, odd p and p not dividing c_1 c_2 (c_1 + c_2):

        chi_1(c_1) chi_2(c_2) conj(chi_1 chi_2)(c_1 + c_2) p^{m/2} delta_2,
        delta_2 = (-2r/p)^m (c_1 c_2 (c_1 + c_2)/p)^m eps_{p^m}

    Summing it against chi_3..chi_k folds the first two characters of a k-fold sum:
    J_{p^n}(chi_1, ..., chi_k) = pair_factor * J_{p^n}(chi_1 chi_2, chi_3, ..., chi_k).
    """
    if chi1.ctx != chi2.ctx:
        raise InvalidArgumentError(f"characters mod {chi1.ctx.modulus} and mod {chi2.ctx.modulus}")
    p, m = chi1.p, chi1.m
    if p == 2 or m < 2:
        raise UnsupportedRegimeError(f"the pair factor needs odd p and m >= 2 (modulus {chi1.ctx.modulus})")
    c1, c2 = chi1.label, chi2.label
    if c1 * c2 * (c1 + c2) % p == 0:
        raise PreconditionError(f"p={p} divides c_1 c_2 (c_1 + c_2) for c_1={c1}, c_2={c2}")

    def sign(num: int) -> ExactValue:
        return ExactValue.from_sign(p, jacobi_symbol(num, p))

    delta = sign(-2 * chi1.ctx.r) ** m * sign(c1 * c2 * (c1 + c2)) ** m * ExactValue.root_of_unity(p, epsilon(p, m))
    return (
        chi1(c1)
        * chi2(c2)
        * (chi1 * chi2).conjugate()(c1 + c2)
        * ExactValue.power_of_p(p, m)
        * delta
    )


# =============================================================================
# Dispatch
# =============================================================================

def jacobi_eval(query: JacobiQuery, method: str = "auto", term_guard: int | None = None) -> SumResult:
    """
    Evaluate J_B by the requested path.

    auto: k = 1 is chi(B); B = 0 goes to the top case; m >= n + 2 tries the
    closed form and falls back to the Gauss quotient; m = n + 1 uses the
    quotient; sums without a primitive character fall back to brute force.
    """
    if method not in JACOBI_METHODS:
        raise InvalidArgumentError(f"unknown Jacobi method {method!r}; expected one of {JACOBI_METHODS}")
    if method == "brute":
        return jacobi_brute(query, term_guard)
    if method == "closed":
        return jacobi_closed(query)
    if method == "quotient":
        return jacobi_via_gauss(query)
    if method == "direct":
        return jacobi_direct_k2(query)

    if query.k == 1:
        chi = query.chars[0]
        return SumResult(chi(query.B), Method.jacobi_closed, "single character: chi(B)")
    if query.B == 0:
        return jacobi_top_case(query)
    try:
        if query.n <= query.m - 2:
            try:
                return jacobi_closed(query)
            except UnsupportedRegimeError as e:
                logger.debug(f"{query}: {e}; falling back to the Gauss quotient")
        return jacobi_via_gauss(query)
    except PreconditionError as e:
        logger.debug(f"{query}: {e}; falling back to brute force")
        return jacobi_brute(query, term_guard)


__all__ = [
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
