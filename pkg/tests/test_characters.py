from fractions import Fraction

import numpy as np
import pytest

from charsum.arithmetic import ExactValue, get_context
from charsum.arithmetic.characters import (
    character,
    conductor,
    conductor_brute,
    enumerate_characters,
    is_primitive,
    make_character,
    multiply,
    product,
    reduce_to_modulus,
)
from charsum.errors import InvalidArgumentError, NotReducibleError

MODULI = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 1), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)]


def test_evaluation_mod_9():
    chi = character(3, 2, 1)
    assert chi(2) == ExactValue.root_of_unity(3, Fraction(1, 6))
    assert chi(5) == ExactValue.root_of_unity(3, Fraction(5, 6))
    assert chi(1) == ExactValue.one(3)
    assert chi(3).zero
    assert chi(-7) == chi(2)


def test_label_of_zero_exponent():
    assert character(3, 2, 0).label == 6
    assert character(3, 2, 7).label == 1
    assert character(2, 5, 0, 1).label == 8


def test_parity():
    assert character(3, 2, 1).parity() == -1  # -1 = 2^3
    assert character(3, 2, 2).parity() == 1
    assert character(2, 3, 1, 0).parity() == 1
    assert character(2, 3, 0, 1).parity() == -1


@pytest.mark.parametrize(
    "p,m,c,e,expected",
    [
        (3, 2, 3, 0, 3),
        (3, 2, 0, 0, 1),
        (3, 2, 1, 0, 9),
        (2, 3, 0, 1, 4),
        (2, 3, 1, 0, 8),
        (2, 3, 0, 0, 1),
        (2, 4, 2, 0, 8),
        (2, 4, 2, 1, 8),
        (2, 2, 0, 1, 4),
        (5, 3, 10, 0, 25),
    ],
)
def test_conductor(p, m, c, e, expected):
    assert conductor(character(p, m, c, e)) == expected


@pytest.mark.parametrize("p,m", MODULI)
def test_conductor_matches_definition(p, m):
    for chi in enumerate_characters(get_context(p, m)):
        assert conductor(chi) == conductor_brute(chi), chi


@pytest.mark.parametrize(
    "p,m,expected",
    [(3, 2, 4), (2, 3, 2), (2, 2, 1), (2, 1, 0), (3, 1, 1), (5, 2, 16), (2, 5, 8)],
)
def test_primitive_count(p, m, expected):
    assert len(list(enumerate_characters(get_context(p, m), primitive_only=True))) == expected


@pytest.mark.parametrize("p,m", MODULI)
def test_enumeration_is_complete(p, m, chars_mod):
    ctx = get_context(p, m)
    chars = chars_mod(p, m)
    assert len(chars) == ctx.phi
    tables = {tuple(np.round(chi.values(), 9)) for chi in chars}
    assert len(tables) == ctx.phi


def test_values_match_evaluation():
    for p, m in [(3, 2), (2, 4), (5, 2)]:
        for chi in enumerate_characters(get_context(p, m)):
            values = chi.values()
            for x in range(chi.q):
                assert abs(values[x] - chi(x).to_complex()) < 1e-12


def test_multiply_and_conjugate():
    chi = character(3, 2, 1)
    assert chi * chi == character(3, 2, 2)
    assert (chi * chi.conjugate()).is_principal
    assert product([chi] * 6).is_principal
    psi = character(2, 4, 3, 1)
    assert (psi * psi.conjugate()).is_principal
    assert multiply(psi, psi) == character(2, 4, 6, 0)


def test_multiply_rejects_mixed_moduli():
    with pytest.raises(InvalidArgumentError):
        multiply(character(3, 2, 1), character(3, 3, 1))
    with pytest.raises(InvalidArgumentError):
        product([])


def test_sign_validation():
    with pytest.raises(InvalidArgumentError):
        character(3, 2, 1, 1)
    with pytest.raises(InvalidArgumentError):
        character(2, 3, 1, 2)
    with pytest.raises(InvalidArgumentError):
        make_character(get_context(2, 1), 0, 1)


@pytest.mark.parametrize("p,m", [(3, 3), (5, 2), (2, 5), (2, 4), (7, 2)])
def test_reduce_to_modulus_agrees_on_units(p, m):
    ctx = get_context(p, m)
    for chi in enumerate_characters(ctx):
        for j in range(1, m + 1):
            if p**j % conductor(chi):
                continue
            reduced = reduce_to_modulus(chi, j)
            assert reduced.m == j
            for x in ctx.units.tolist():
                assert reduced(x) == chi(x)


def test_reduce_to_modulus_example():
    reduced = reduce_to_modulus(character(3, 2, 3), 1)
    assert reduced == character(3, 1, 1)
    assert is_primitive(reduced)


def test_reduce_to_modulus_errors():
    with pytest.raises(NotReducibleError):
        reduce_to_modulus(character(3, 2, 1), 1)
    with pytest.raises(InvalidArgumentError):
        reduce_to_modulus(character(3, 2, 1), 3)
    with pytest.raises(InvalidArgumentError):
        reduce_to_modulus(character(3, 2, 1), 0)


# q <= 512
MULTIPLICATIVE_MODULI = (
    [(2, m) for m in range(1, 10)]
    + [(3, m) for m in range(1, 6)]
    + [(5, 3), (7, 3), (11, 2), (13, 2), (19, 2), (257, 1)]
)


def turn_table(chi, units):
    return np.array([chi.turns(x) for x in units], dtype=np.int64)


@pytest.mark.slow
@pytest.mark.parametrize("p,m", MULTIPLICATIVE_MODULI)
def test_characters_are_multiplicative(p, m):
    ctx = get_context(p, m)
    units = ctx.units.tolist()
    index = np.full(ctx.q, -1)
    index[units] = np.arange(len(units))
    products = index[np.outer(units, units) % ctx.q]
    for chi in enumerate_characters(ctx):
        turns = turn_table(chi, units)
        pairwise = (turns[:, None] + turns[None, :]) % ctx.phase_den
        assert np.array_equal(pairwise, turns[products]), chi


@pytest.mark.slow
@pytest.mark.parametrize("p,m", MULTIPLICATIVE_MODULI)
def test_multiply_is_pointwise_product(p, m):
    ctx = get_context(p, m)
    units = ctx.units.tolist()
    chars = list(enumerate_characters(ctx))
    tables = {chi: turn_table(chi, units) for chi in chars}
    for a in chars:
        for b in chars:
            expected = (tables[a] + tables[b]) % ctx.phase_den
            assert np.array_equal(tables[multiply(a, b)], expected), (a, b)


def test_turns_agree_with_evaluation():
    chi = character(3, 2, 1)
    big = chi.ctx.phase_den
    assert big == 72
    assert chi.turns(2) == 12  # e(1/6)
    assert chi.turns(3) is None
    assert chi.label_turns == chi.turns(1) == 0
    for x in chi.ctx.units.tolist():
        assert chi(x) == ExactValue.from_turns(3, 0, chi.turns(x), big)
