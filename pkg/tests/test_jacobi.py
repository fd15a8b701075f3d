from fractions import Fraction
from itertools import product as cartesian

import pytest

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
from charsum.errors import (
    InvalidArgumentError,
    PreconditionError,
    ResourceGuardError,
    UnsupportedRegimeError,
)
from charsum.sums import (
    JacobiQuery,
    jacobi_brute,
    jacobi_closed,
    jacobi_direct_k2,
    jacobi_eval,
    jacobi_top_case,
    jacobi_vanishes,
    jacobi_via_gauss,
    make_query,
    normalize_B,
    pair_factor,
)

ZERO = 1e-9


def b_values(p: int, m: int) -> list[int]:
    unit = 3 if p == 2 else 2
    return [0] + [p**n * u for n in range(m) for u in (1, unit)]


def assert_paths_agree(query: JacobiQuery):
    """Every applicable path matches brute force; exact paths match each other."""
    brute = jacobi_brute(query)
    p, m, n, k = query.p, query.m, query.n, query.k
    if n == m:
        paths = [jacobi_top_case]
    else:
        paths = [jacobi_via_gauss]
        if n <= m - 2:
            paths.append(jacobi_closed)
            if p != 2 and k == 2:
                paths.append(jacobi_direct_k2)

    exact = []
    for path in paths:
        try:
            result = path(query)
        except UnsupportedRegimeError:
            continue
        assert approx_equal(result, brute), f"{path.__name__} {query}: {result.value} vs {brute.value}"
        if result.is_exact:
            exact.append(result.value)
    assert all(v == exact[0] for v in exact), query

    if n < m:
        assert jacobi_vanishes(query) == (brute.magnitude <= ZERO), query


# =============================================================================
# Query construction
# =============================================================================

def test_query_properties():
    query = make_query(3, 3, [1, 5], B=18)
    assert query.n == 2 and query.b_unit == 2
    assert query.labels == (1, 5)
    assert query.v is None
    assert make_query(3, 3, [1, 8], B=9).v == 1
    assert make_query(3, 2, [1, 2], B=9).B == 0
    assert make_query(3, 2, [1, 2], B=9).n == 2
    assert str(make_query(3, 2, [1], B=1)) == "J_1(chi[c=1 mod 3^2])"


def test_query_validation():
    with pytest.raises(InvalidArgumentError):
        JacobiQuery(())
    with pytest.raises(InvalidArgumentError):
        JacobiQuery((character(3, 2, 1), character(3, 3, 1)))
    with pytest.raises(InvalidArgumentError):
        make_query(2, 3, [1, 1], signs=[0])


def test_normalize_B():
    query = make_query(3, 3, [1, 2], B=6)
    reduced, prefactor = normalize_B(query)
    assert reduced.B == 3
    assert prefactor == query.product(2)
    expected = prefactor.to_complex() * jacobi_brute(reduced).to_complex()
    assert abs(jacobi_brute(query).to_complex() - expected) < 1e-9
    top = make_query(3, 2, [1, 5], B=0)
    assert normalize_B(top) == (top, ExactValue.one(3))


# =============================================================================
# Known values
# =============================================================================

def test_mod_9_pair():
    query = make_query(3, 2, [1, 1])
    expected = ExactValue(3, 2, Fraction(2, 3))
    assert jacobi_closed(query).value == expected
    assert jacobi_direct_k2(query).value == expected
    assert jacobi_via_gauss(query).value == expected
    assert approx_equal(jacobi_brute(query), expected)
    assert jacobi_eval(query).method is Method.jacobi_closed


def test_top_case_value():
    query = make_query(3, 2, [1, 5], B=9)
    result = jacobi_eval(query)
    assert result.method is Method.top_case
    assert result.value == ExactValue(3, scale=-6)
    assert approx_equal(jacobi_brute(query), result.value)
    assert jacobi_top_case(make_query(3, 2, [1, 1], B=0)).value == ExactValue.zero_of(3)


def test_mod_8_triple():
    query = make_query(2, 3, [1, 1, 1])
    assert jacobi_closed(query).value == ExactValue(2, scale=8)
    assert approx_equal(jacobi_brute(query), ExactValue(2, scale=8))


@pytest.mark.parametrize("signs", list(cartesian((0, 1), repeat=3)))
def test_mod_8_triples_follow_odd_count(signs):
    query = make_query(2, 3, [1, 1, 1], signs=list(signs))
    ell = sum(signs)
    expected = ExactValue(2, scale=8 * (-1) ** (ell // 2))
    assert jacobi_closed(query).value == expected
    assert approx_equal(jacobi_brute(query), expected)


def test_m_equals_n_plus_1():
    nonzero = jacobi_eval(make_query(3, 2, [1, 2], B=3))
    assert nonzero.method is Method.gauss_quotient
    assert isinstance(nonzero.value, NumericValue)
    assert nonzero.magnitude == pytest.approx(3**1.5)

    zero = jacobi_eval(make_query(3, 2, [1, 1], B=3))
    assert zero.value == ExactValue.zero_of(3)


def test_direct_method_zero_cases():
    result = jacobi_direct_k2(make_query(3, 3, [1, 1], B=3))
    assert result.value == ExactValue.zero_of(3)
    assert jacobi_direct_k2(make_query(3, 3, [1, 3])).value == ExactValue.zero_of(3)
    assert jacobi_direct_k2(make_query(3, 3, [1, 1])).notes.startswith("case (ii)")
    assert jacobi_direct_k2(make_query(3, 3, [1, 2], B=3)).notes.startswith("case (iii)")


def test_single_character():
    result = jacobi_eval(make_query(5, 2, [3], B=7))
    assert result.value == character(5, 2, 3)(7)
    assert jacobi_brute(make_query(5, 2, [3], B=7)).terms == 1


def test_even_v_falls_back_to_quotient():
    query = make_query(2, 5, [1, 1, 7, 7], signs=[1, 0, 0, 0], B=8)
    with pytest.raises(UnsupportedRegimeError):
        jacobi_closed(query)
    result = jacobi_eval(query)
    assert result.method is Method.gauss_quotient
    assert approx_equal(result, jacobi_brute(query))


def test_uncovered_two_adic_cell_falls_back():
    query = make_query(2, 4, [1, 3])
    with pytest.raises(UnsupportedRegimeError):
        jacobi_closed(query)
    assert jacobi_eval(query).method is Method.gauss_quotient


def test_no_primitive_character_falls_back_to_brute():
    query = make_query(3, 2, [3, 3])
    with pytest.raises(PreconditionError):
        jacobi_closed(query)
    with pytest.raises(PreconditionError):
        jacobi_vanishes(query)
    assert jacobi_eval(query).method is Method.brute


# =============================================================================
# Pair factor
# =============================================================================

@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2)])
def test_pair_factor_times_product_is_the_pair_sum(p, m):
    ctx = get_context(p, m)
    labels = [c for c in range(1, ctx.exponent_order + 1) if c % p]
    for c1, c2 in cartesian(labels, labels):
        if (c1 + c2) % p == 0:
            continue
        chi1, chi2 = character(p, m, c1), character(p, m, c2)
        factor = pair_factor(chi1, chi2)
        assert factor.half_exp == m
        for b in (1, 2, ctx.q - 1):
            expected = jacobi_brute(make_query(p, m, [c1, c2], B=b))
            assert approx_equal(factor * (chi1 * chi2)(b), expected), (p, m, c1, c2, b)


def test_pair_factor_errors():
    with pytest.raises(UnsupportedRegimeError):
        pair_factor(character(2, 4, 1), character(2, 4, 1))
    with pytest.raises(UnsupportedRegimeError):
        pair_factor(character(5, 1, 1), character(5, 1, 1))
    with pytest.raises(PreconditionError):
        pair_factor(character(3, 2, 1), character(3, 2, 2))
    with pytest.raises(PreconditionError):
        pair_factor(character(3, 2, 3), character(3, 2, 1))
    with pytest.raises(InvalidArgumentError):
        pair_factor(character(3, 2, 1), character(3, 3, 1))


# =============================================================================
# Errors
# =============================================================================

def test_errors():
    with pytest.raises(InvalidArgumentError):
        jacobi_eval(make_query(3, 2, [1, 1]), "fastest")
    with pytest.raises(ResourceGuardError):
        jacobi_brute(make_query(3, 3, [1, 1, 1]), term_guard=100)
    with pytest.raises(UnsupportedRegimeError):
        jacobi_closed(make_query(3, 2, [1, 2], B=3))
    with pytest.raises(UnsupportedRegimeError):
        jacobi_direct_k2(make_query(2, 4, [1, 1]))
    with pytest.raises(InvalidArgumentError):
        jacobi_direct_k2(make_query(3, 3, [1, 1, 1]))
    with pytest.raises(PreconditionError):
        jacobi_top_case(make_query(3, 2, [1, 1]))
    with pytest.raises(PreconditionError):
        jacobi_closed(make_query(3, 3, [1]))
    with pytest.raises(UnsupportedRegimeError):
        jacobi_vanishes(make_query(5, 1, [1, 1]))


# =============================================================================
# Path agreement grids
# =============================================================================

@pytest.mark.slow
@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)])
def test_pairs_agree_across_paths(p, m):
    chars = list(enumerate_characters(get_context(p, m)))
    for chi1, chi2 in cartesian(chars, repeat=2):
        if not (is_primitive(chi1) or is_primitive(chi2)):
            continue
        for B in b_values(p, m):
            assert_paths_agree(JacobiQuery((chi1, chi2), B))


@pytest.mark.slow
@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_triples_agree_across_paths(p, m):
    chars = list(enumerate_characters(get_context(p, m)))
    primitive = [chi for chi in chars if is_primitive(chi)]
    for triple in cartesian(primitive, chars, chars):
        for B in (1, p, p * p):
            assert_paths_agree(JacobiQuery(triple, B))


@pytest.mark.slow
@pytest.mark.parametrize("m", [6, 7])
def test_two_adic_generalised_cells(m):
    primitive = list(enumerate_characters(get_context(2, m), primitive_only=True))
    for chi1, chi2 in cartesian(primitive, repeat=2):
        for n in (m - 4, m - 3, m - 2):
            for unit in (1, 3):
                assert_paths_agree(JacobiQuery((chi1, chi2), 2**n * unit))


@pytest.mark.slow
def test_two_adic_triples_mod_32():
    primitive = list(enumerate_characters(get_context(2, 5), primitive_only=True))
    for triple in cartesian(primitive, repeat=3):
        for B in (1, 2, 4, 8):
            assert_paths_agree(JacobiQuery(triple, B))
