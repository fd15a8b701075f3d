"""
Exact and numeric character-sum values.

Every closed form in this package is a product of p-power magnitudes and roots
of unity of known order, so it is carried exactly as

    scale * p^{half_exp/2} * e^{2 pi i num/den}

with num/den in lowest terms and 0 <= num < den. The closed forms accumulate
integer turns over one denominator per modulus and build a single value at the
end (`ExactValue.from_turns`). Brute-force sums are carried as a complex
number together with the number of summed terms.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from charsum.errors import InvalidArgumentError

OMEGA = Fraction(1, 8)  # e^{pi i/4}
I_ROTATION = Fraction(1, 4)

_set = object.__setattr__


class ExactValue:
    """A character-sum value in closed form (zero, or scale * p^{t/2} * root of unity)."""

    __slots__ = ("p", "half_exp", "num", "den", "scale", "zero")

    def __init__(
        self,
        p: int,
        half_exp: int = 0,
        rotation: Fraction | int = 0,
        scale: int = 1,
        zero: bool = False,
    ):
        rotation = Fraction(rotation)
        if zero:
            scale = 0
        self._normalize(p, half_exp, rotation.numerator, rotation.denominator, scale)

    @classmethod
    def from_turns(cls, p: int, half_exp: int, num: int, den: int, scale: int = 1) -> "ExactValue":
        """scale * p^{half_exp/2} * e^{2 pi i num/den} from raw integers."""
        value = object.__new__(cls)
        value._normalize(p, half_exp, num, den, scale)
        return value

    def _normalize(self, p: int, half_exp: int, num: int, den: int, scale: int) -> None:
        if scale == 0:
            half_exp, num, den, zero = 0, 0, 1, True
        else:
            zero = False
            if scale < 0:
                scale = -scale
                if den % 2:
                    num, den = 2 * num, 2 * den
                num += den // 2
            # keep (half_exp, scale) canonical: p never divides scale
            while scale % p == 0:
                scale //= p
                half_exp += 2
            num %= den
            g = math.gcd(num, den)
            if g > 1:
                num, den = num // g, den // g
        _set(self, "p", p)
        _set(self, "half_exp", half_exp)
        _set(self, "num", num)
        _set(self, "den", den)
        _set(self, "scale", scale)
        _set(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError(f"ExactValue is immutable (tried to set {name!r})")

    def __reduce__(self):
        return ExactValue.from_turns, (self.p, self.half_exp, self.num, self.den, self.scale)

    def _key(self) -> tuple:
        return self.p, self.half_exp, self.num, self.den, self.scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactValue):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.zero:
            return f"ExactValue(p={self.p}, zero=True)"
        return f"ExactValue(p={self.p}, half_exp={self.half_exp}, rotation={self.num}/{self.den}, scale={self.scale})"

    @classmethod
    def zero_of(cls, p: int) -> "ExactValue":
        return cls.from_turns(p, 0, 0, 1, scale=0)

    @classmethod
    def one(cls, p: int) -> "ExactValue":
        return cls.from_turns(p, 0, 0, 1)

    @classmethod
    def root_of_unity(cls, p: int, rotation: Fraction) -> "ExactValue":
        return cls(p, rotation=rotation)

    @classmethod
    def power_of_p(cls, p: int, half_exp: int) -> "ExactValue":
        """p^{half_exp/2}."""
        return cls.from_turns(p, half_exp, 0, 1)

    @classmethod
    def from_sign(cls, p: int, s: int) -> "ExactValue":
        """A Jacobi/Legendre symbol value -1, 0 or +1."""
        if s not in (-1, 0, 1):
            raise InvalidArgumentError(f"expected -1, 0 or 1, got {s}")
        return cls.from_turns(p, 0, 0, 1, scale=s)

    @property
    def rotation(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def magnitude(self) -> float:
        if self.zero:
            return 0.0
        return self.scale * math.sqrt(self.p) ** self.half_exp

    @property
    def phase(self) -> tuple[int, int]:
        """(s, N) with the rotation s/N in lowest terms."""
        return self.num, self.den

    def __mul__(self, other: "ExactValue") -> "ExactValue":
        return multiply_values(self, other)

    def __truediv__(self, other: "ExactValue") -> "ExactValue":
        return divide_values(self, other)

    def __pow__(self, exponent: int) -> "ExactValue":
        if exponent < 0:
            return divide_values(ExactValue.one(self.p), self ** (-exponent))
        if self.zero:
            return self if exponent else ExactValue.one(self.p)
        return ExactValue.from_turns(
            self.p, self.half_exp * exponent, self.num * exponent, self.den, self.scale**exponent
        )

    def conjugate(self) -> "ExactValue":
        if self.zero:
            return self
        return ExactValue.from_turns(self.p, self.half_exp, -self.num, self.den, self.scale)

    def to_complex(self) -> complex:
        return to_complex(self)

    def __str__(self) -> str:
        if self.zero:
            return "0"
        s, n = self.phase
        scale = f"{self.scale}*" if self.scale != 1 else ""
        return f"{scale}{self.p}^({self.half_exp}/2)*e(2pi i {s}/{n})"

@dataclass(frozen=True)
class NumericValue:
    """A floating-point sum with the number of terms that produced it."""

    value: complex
    terms: int = 1

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    def conjugate(self) -> "NumericValue":
        return NumericValue(self.value.conjugate(), self.terms)

    def to_complex(self) -> complex:
        return self.value


Value = Union[ExactValue, NumericValue]


class Method(str, Enum):
    """Evaluation path that produced a SumResult."""

    brute = "brute"
    gauss_closed = "gauss-closed"
    jacobi_closed = "jacobi-closed"
    gauss_quotient = "gauss-quotient"
    direct_k2 = "direct-k2"
    top_case = "top-case"


@dataclass(frozen=True)
class SumResult:
    """A sum value plus the provenance of the path that computed it."""

    value: Value
    method: Method
    notes: str = ""

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, ExactValue)

    @property
    def magnitude(self) -> float:
        return self.value.magnitude

    def to_complex(self) -> complex:
        return self.value.to_complex()

    @property
    def terms(self) -> int | None:
        return self.value.terms if isinstance(self.value, NumericValue) else None


# =============================================================================
# Operations
# =============================================================================

def _add_turns(a: ExactValue, b: ExactValue, sign: int) -> tuple[int, int]:
    if a.den == b.den:
        return a.num + sign * b.num, a.den
    return a.num * b.den + sign * b.num * a.den, a.den * b.den


def multiply_values(a: ExactValue, b: ExactValue) -> ExactValue:
    """Exact product: half exponents add, rotations add mod 1, scales multiply."""
    if a.p != b.p:
        raise InvalidArgumentError(f"cannot combine values over p={a.p} and p={b.p}")
    if a.zero or b.zero:
        return ExactValue.zero_of(a.p)
    num, den = _add_turns(a, b, 1)
    return ExactValue.from_turns(a.p, a.half_exp + b.half_exp, num, den, a.scale * b.scale)


def divide_values(a: ExactValue, b: ExactValue) -> ExactValue:
    """Exact quotient a / b."""
    if a.p != b.p:
        raise InvalidArgumentError(f"cannot combine values over p={a.p} and p={b.p}")
    if b.zero:
        raise ZeroDivisionError("division by an exact zero")
    if a.zero:
        return a
    if a.scale % b.scale:
        raise InvalidArgumentError(f"scale {a.scale} is not divisible by {b.scale}")
    num, den = _add_turns(a, b, -1)
    return ExactValue.from_turns(a.p, a.half_exp - b.half_exp, num, den, a.scale // b.scale)


def to_complex(v: Value) -> complex:
    """Double-precision value of an exact or numeric sum."""
    if isinstance(v, NumericValue):
        return v.value
    if v.zero:
        return 0j
    return cmath.rect(v.magnitude, 2 * math.pi * v.num / v.den)


def mixed_product(factors: list[Value], divisors: list[Value] = ()) -> Value:
    """
    Product of factors over divisors, exact when every operand is exact.

    A single numeric operand turns the result numeric; its term count is the
    largest term count among the numeric operands.
    """
    operands = [*factors, *divisors]
    if all(isinstance(v, ExactValue) for v in operands):
        result = factors[0]
        for v in factors[1:]:
            result = result * v
        for v in divisors:
            result = result / v
        return result

    terms = max(v.terms for v in operands if isinstance(v, NumericValue))
    value = complex(1)
    for v in factors:
        value *= to_complex(v)
    for v in divisors:
        value /= to_complex(v)
    return NumericValue(value, terms)


def _as_value(x: "SumResult | Value") -> Value:
    return x.value if isinstance(x, SumResult) else x


def deviation(a: "SumResult | Value", b: "SumResult | Value") -> float:
    """|a - b| in double precision (exactly 0 for identical exact values)."""
    va, vb = _as_value(a), _as_value(b)
    if isinstance(va, ExactValue) and isinstance(vb, ExactValue) and va == vb:
        return 0.0
    return abs(to_complex(va) - to_complex(vb))


def approx_equal(a: "SumResult | Value", b: "SumResult | Value", tol: float = 1e-6) -> bool:
    """
    Compare two sums.

    Two exact values must match structurally (half exponent, rotation and
    scale). Otherwise |a - b| <= tol * max(1, magnitude), where the magnitude
    is taken from the exact operand when there is one.
    """
    if tol <= 0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tol}")
    va, vb = _as_value(a), _as_value(b)
    if isinstance(va, ExactValue) and isinstance(vb, ExactValue):
        if va.p == vb.p:
            return va == vb
    exact = [v for v in (va, vb) if isinstance(v, ExactValue)]
    expected = exact[0].magnitude if exact else max(va.magnitude, vb.magnitude)
    return deviation(va, vb) <= tol * max(1.0, expected)
