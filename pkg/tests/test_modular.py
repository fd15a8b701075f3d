import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis.strategies import integers, sampled_from

from charsum.arithmetic.modular import (
    _reduced_jacobi,
    epsilon,
    epsilon_quarters,
    jacobi_symbol,
    mod_inverse,
    require_prime,
    valuation,
)
from charsum.errors import InvalidArgumentError, NonInvertibleError


@pytest.mark.parametrize(
    "num,den,expected",
    [(2, 7, 1), (3, 7, -1), (0, 9, 0), (-1, 3, -1), (2, 3, -1), (5, 1, 1), (2, 15, 1), (-2, 5, -1)],
)
def test_jacobi_symbol(num, den, expected):
    assert jacobi_symbol(num, den) == expected


@pytest.mark.parametrize("den", [0, -3, 4])
def test_jacobi_symbol_needs_odd_positive_denominator(den):
    with pytest.raises(InvalidArgumentError):
        jacobi_symbol(1, den)


@given(integers(-500, 500), integers(-500, 500), sampled_from([3, 5, 7, 9, 15, 21, 33, 101]))
def test_jacobi_symbol_is_multiplicative(a, b, n):
    assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)


@given(integers(-10**6, 10**6), sampled_from([3, 5, 7, 9, 15, 21, 25, 27, 33, 101, 243]))
def test_jacobi_symbol_of_a_square_is_one(x, n):
    assume(math.gcd(x, n) == 1)
    assert jacobi_symbol(x * x, n) == 1


def test_jacobi_symbol_emits_no_deprecation_warning():
    _reduced_jacobi.cache_clear()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert jacobi_symbol(2, 7) == 1
        assert jacobi_symbol(3, 11) == 1


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(-1, 9) == 8


def test_mod_inverse_of_non_unit():
    with pytest.raises(NonInvertibleError) as info:
        mod_inverse(3, 9)
    # usable wherever a ValueError is expected
    assert isinstance(info.value, ValueError)


def test_valuation():
    assert valuation(18, 3) == 2
    assert valuation(-16, 2) == 4
    assert valuation(7, 5) == 0
    with pytest.raises(InvalidArgumentError):
        valuation(0, 3)


@pytest.mark.parametrize(
    "p,m,expected",
    [(3, 1, Fraction(1, 4)), (3, 2, Fraction(0)), (5, 1, Fraction(0)), (7, 3, Fraction(1, 4)), (7, 2, Fraction(0))],
)
def test_epsilon(p, m, expected):
    assert epsilon(p, m) == expected


def test_epsilon_quarters_match_epsilon():
    for p in (3, 5, 7, 11, 13):
        for m in range(1, 6):
            assert Fraction(epsilon_quarters(p, m), 4) == epsilon(p, m)


def test_epsilon_undefined_for_two():
    with pytest.raises(InvalidArgumentError):
        epsilon(2, 3)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_require_prime_rejects(p):
    with pytest.raises(InvalidArgumentError):
        require_prime(p)
