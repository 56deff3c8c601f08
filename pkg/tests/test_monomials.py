import itertools

import pytest
from hypothesis import given, settings, strategies as st

from loopideal.monomials import (
    DimensionError,
    Monomial,
    MonomialIdeal,
    colon_by_monomial,
    divides,
    equals,
    gcd,
    intersect,
    is_generated_by_variables,
    lcm,
    minimalize,
    parse_ideal,
    parse_monomial,
    quotient,
    radical,
)


def M(text, n=4):
    return parse_monomial(text, n)


def I(text, n=4):
    return parse_ideal(text, n)


def test_divides_examples():
    assert divides(M("X1"), M("X1*X3"))
    assert not divides(M("X1^2"), M("X1"))
    assert divides(M("X2*X4"), M("X1*X2*X3*X4"))


def test_divides_dimension_mismatch():
    with pytest.raises(DimensionError):
        divides(M("X1", 3), M("X1", 4))


def test_gcd_lcm_quotient():
    assert gcd(M("X1*X2"), M("X2*X3")) == M("X2")
    assert lcm(M("X1^2"), M("X1*X2")) == M("X1^2*X2")
    assert quotient(M("X1*X2*X3"), M("X2")) == M("X1*X3")
    with pytest.raises(ValueError):
        quotient(M("X1"), M("X2"))


def test_minimalize_examples():
    assert minimalize([M("X1*X3"), M("X1")]) == I("(X1)")
    assert minimalize([M("X1*X2"), M("X2*X3"), M("X1*X2*X3")]) == I("(X1*X2, X2*X3)")
    assert minimalize([], 4).is_zero()


def test_colon_examples():
    n = 5
    assert colon_by_monomial(I("(X1*X3)", n), M("X1*X4", n)) == I("(X3)", n)
    assert colon_by_monomial(I("(X1*X3, X1*X4)", n), M("X1*X2", n)) == I("(X3, X4)", n)
    ideal = I("(X1*X2, X2*X3)", n)
    assert colon_by_monomial(ideal, Monomial.one(n)) == ideal


def test_intersect_examples():
    assert intersect(I("(X1, X2)", 3), I("(X3)", 3)) == I("(X1*X3, X2*X3)", 3)
    ideal = I("(X1*X2)")
    assert intersect(ideal, ideal) == ideal
    assert intersect(I("(X1)"), I("(X1^2)")) == I("(X1^2)")


def test_variable_generated_and_radical():
    assert is_generated_by_variables(I("(X3, X4)")) == frozenset({3, 4})
    # stored form is already minimal: (X1*X3, X1) is (X1)
    assert is_generated_by_variables(I("(X1*X3, X1)")) == frozenset({1})
    assert is_generated_by_variables(I("(X1*X3, X2)")) is None
    assert radical(I("(X1^2, X2*X3)")) == I("(X1, X2*X3)")


def test_parse_format_round_trip():
    ideal = I("(x1*X3^2, X1*x2)")
    assert str(ideal) == "(X1*X2, X1*X3^2)"
    assert parse_ideal(str(ideal), 4) == ideal
    assert str(I("(0)")) == "(0)"
    assert str(Monomial.one(3)) == "1"
    assert equals(I("(X2, X1)"), I("(X1, X2)"))


def test_unit_ideal():
    unit = MonomialIdeal.unit(3)
    assert unit.is_unit()
    assert colon_by_monomial(I("(X1*X2)", 3), M("X1*X2", 3)).is_unit()


# -- properties ---------------------------------------------------------------

N = 4
exps = st.lists(st.integers(0, 2), min_size=N, max_size=N).map(lambda e: Monomial(tuple(e)))
ideals = st.lists(exps, min_size=1, max_size=4).map(lambda gs: minimalize(gs, N))


def all_monomials(n, max_deg):
    for e in itertools.product(range(max_deg + 1), repeat=n):
        if sum(e) <= max_deg:
            yield Monomial(e)


def member(u, ideal):
    # independent membership: some generator divides u
    return any(all(a <= b for a, b in zip(g.exponents, u.exponents)) for g in ideal.gens)


@settings(max_examples=60, deadline=None)
@given(ideals, exps)
def test_colon_membership(ideal, u):
    colon = colon_by_monomial(ideal, u)
    for v in all_monomials(N, 4):
        assert member(v, colon) == member(v * u, ideal)


@settings(max_examples=60, deadline=None)
@given(ideals, ideals)
def test_intersection_membership(a, b):
    meet = intersect(a, b)
    for v in all_monomials(N, 5):
        assert member(v, meet) == (member(v, a) and member(v, b))


@settings(max_examples=80, deadline=None)
@given(st.lists(exps, min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_minimalize_idempotent_and_order_free(gens, rnd):
    once = minimalize(gens, N)
    assert minimalize(once.gens, N) == once
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert minimalize(shuffled, N) == once
    for g, h in itertools.permutations(once.gens, 2):
        assert not divides(g, h)
