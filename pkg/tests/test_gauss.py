import math
from fractions import Fraction

import pytest
from sympy import primerange

from charsum.arithmetic import (
    ExactValue,
    Method,
    NumericValue,
    approx_equal,
    character,
    enumerate_characters,
    get_context,
    is_primitive,
)
from charsum.errors import InvalidArgumentError, ResourceGuardError, UnsupportedRegimeError
from charsum.sums import gauss_brute, gauss_closed, gauss_conjugate, gauss_eval, gauss_value
from charsum.sums.gauss import min_j

ORACLE_MODULI = (
    [(2, m) for m in range(2, 12)]
    + [(3, m) for m in range(2, 7)]
    + [(5, m) for m in range(2, 5)]
    + [(7, 2), (7, 3)]
    + [(p, 2) for p in primerange(11, 46)]
)


@pytest.mark.parametrize(
    "p,m,c,e,expected",
    [
        (3, 2, 1, 0, ExactValue(3, 2, Fraction(7, 18))),
        (2, 2, 0, 1, ExactValue(2, 2, Fraction(1, 4))),
        (2, 3, 1, 1, ExactValue(2, 3, Fraction(1, 4))),
        (2, 3, 0, 1, ExactValue.zero_of(2)),
        (2, 5, 1, 0, ExactValue(2, 5, Fraction(5, 32))),
    ],
)
def test_known_values(p, m, c, e, expected):
    chi = character(p, m, c, e)
    closed = gauss_closed(chi)
    assert closed.value == expected
    assert closed.method is Method.gauss_closed
    assert approx_equal(gauss_brute(chi), expected)


@pytest.mark.parametrize("j", [2, 3, 4])
def test_closed_form_mod_27(j):
    primitive = list(enumerate_characters(get_context(3, 3), primitive_only=True))
    assert len(primitive) == 12
    for chi in primitive:
        closed = gauss_closed(chi, j)
        assert closed.value.half_exp == 3
        assert approx_equal(closed, gauss_brute(chi)), chi


def test_brute_mod_9(e):
    result = gauss_brute(character(3, 2, 1))
    assert result.terms == 6
    assert abs(result.to_complex() - 3 * e(7 / 18)) < 1e-9


def test_dispatch():
    assert gauss_eval(character(5, 1, 1)).method is Method.brute
    assert gauss_eval(character(5, 2, 1)).method is Method.gauss_closed
    assert gauss_eval(character(5, 2, 1), "brute").method is Method.brute
    assert gauss_eval(character(3, 4, 1)).notes == f"j={min_j(3, 4)}"
    assert isinstance(gauss_value(character(7, 1, 2)), NumericValue)


def test_errors():
    with pytest.raises(InvalidArgumentError):
        gauss_eval(character(3, 2, 1), "fast")
    with pytest.raises(UnsupportedRegimeError):
        gauss_closed(character(5, 1, 1))
    with pytest.raises(InvalidArgumentError):
        gauss_closed(character(3, 5, 1), j=2)
    with pytest.raises(ResourceGuardError):
        gauss_brute(character(3, 5, 1), term_guard=100)
    with pytest.raises(ResourceGuardError):
        gauss_eval(character(2, 40, 1), "brute")


def test_min_j():
    assert min_j(3, 5) == 3
    assert min_j(5, 4) == 2
    assert min_j(2, 7) == 6


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_mod_p_magnitude(p):
    for chi in enumerate_characters(get_context(p, 1)):
        expected = 1.0 if chi.is_principal else math.sqrt(p)
        assert gauss_brute(chi).magnitude == pytest.approx(expected)


@pytest.mark.slow
@pytest.mark.parametrize("p,m", ORACLE_MODULI)
def test_closed_form_matches_oracle(p, m):
    for chi in enumerate_characters(get_context(p, m)):
        closed = gauss_closed(chi)
        assert approx_equal(closed, gauss_brute(chi)), chi
        expected = p ** (m / 2) if is_primitive(chi) else 0.0
        assert closed.magnitude == pytest.approx(expected)


@pytest.mark.slow
@pytest.mark.parametrize("p,m", [(3, 5), (5, 3), (2, 7), (2, 8)])
def test_closed_form_is_independent_of_j(p, m):
    for chi in enumerate_characters(get_context(p, m), primitive_only=True):
        values = {gauss_closed(chi, j).value for j in range(min_j(p, m), m + 3)}
        assert len(values) == 1, chi


@pytest.mark.parametrize(
    "p,m", [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2), (7, 2), (2, 2), (2, 3), (2, 4), (2, 5)]
)
def test_conjugate_matches_numeric_conjugate(p, m):
    for chi in enumerate_characters(get_context(p, m)):
        oracle = gauss_brute(chi)
        expected = NumericValue(oracle.to_complex().conjugate(), oracle.terms)
        assert approx_equal(gauss_conjugate(chi), expected), chi
