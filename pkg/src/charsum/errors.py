"""Exception hierarchy shared by the arithmetic, sums and CLI layers."""


class CharsumError(Exception):
    """Base class for every error raised by charsum."""


class InvalidArgumentError(CharsumError, ValueError):
    """An argument is outside the domain of the operation."""


class NonUnitError(InvalidArgumentError):
    """The value is divisible by p, so it is not a unit mod p^m."""


class NonInvertibleError(NonUnitError):
    """gcd(x, q) > 1, so x has no inverse mod q."""


class NotReducibleError(CharsumError):
    """The character's conductor does not divide the requested modulus."""


class UnsupportedRegimeError(CharsumError):
    """No closed form is stated for this (p, m, n) cell; use another path."""


class PreconditionError(CharsumError):
    """The evaluation path needs an input property that does not hold."""


class ResourceGuardError(CharsumError):
    """The computation would exceed a configured size guard."""
