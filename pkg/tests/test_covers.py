import itertools

import pytest

from loopideal import covers, graphs
from loopideal.fixtures import EX9, EX11, H0, K0
from loopideal.graphs import FamilyH, FamilyKPrime, LoopGraph
from loopideal.monomials import Monomial, minimalize, parse_ideal


def brute_covers(g):
    """Minimal covers by checking every subset of the vertices."""
    found = []
    for r in range(g.n + 1):
        for c in itertools.combinations(range(1, g.n + 1), r):
            c = set(c)
            if not covers.is_vertex_cover(g, c):
                continue
            if any(covers.is_vertex_cover(g, c - {v}) for v in c):
                continue
            found.append(frozenset(c))
    return found


def brute_ideal(g):
    return minimalize((Monomial.from_vars(sorted(c), g.n) for c in brute_covers(g)), g.n)


def as_sets(cs):
    return {frozenset(c) for c in cs}


def test_cover_examples():
    assert as_sets(covers.minimal_vertex_covers(H0())) == {frozenset(s) for s in ({1, 2}, {2, 3}, {1, 4})}
    assert as_sets(covers.minimal_vertex_covers(K0())) == {frozenset(s) for s in ({1, 2}, {1, 4})}
    assert as_sets(covers.minimal_vertex_covers(graphs.build_complete(3))) == {
        frozenset(s) for s in ({1, 2}, {1, 3}, {2, 3})
    }


def test_cover_ideal_fixtures():
    assert covers.cover_ideal(H0()).ideal == parse_ideal("(X1*X2, X2*X3, X1*X4)")
    assert covers.cover_ideal(K0()).ideal == parse_ideal("(X1*X2, X1*X4)")
    assert covers.cover_ideal(EX9()).ideal == parse_ideal(
        "(X1*X2*X3*X4, X2*X3*X4*X5, X1*X3*X4*X6*X7*X8, X1*X2*X4*X9, X1*X2*X3*X10*X11)", 11
    )
    assert covers.cover_ideal(EX11()).ideal == parse_ideal(
        "(X1*X2*X3*X5*X7*X9, X2*X3*X4*X5*X6*X7*X9, X1*X3*X5*X7*X8*X9)", 11
    )


def test_h_of():
    assert covers.h_of(parse_ideal("(X1*X2)")) == 1
    assert covers.h_of(parse_ideal("(0)", 3)) == 0
    with pytest.raises(ValueError):
        covers.h_of(parse_ideal("(1)", 2))
    for m in range(2, 5):
        for stars in itertools.product(range(3), repeat=m):
            fam = FamilyH(m, stars)
            # an empty star lets its center leave the cover
            expected = m if all(stars) else m - 1
            assert covers.h_of(graphs.edge_ideal(fam.graph())[0]) == expected
            k = FamilyKPrime.K(m, stars, {1})
            expected = m - 1 if any(not i for i in stars[1:]) else m
            assert covers.h_of(graphs.edge_ideal(k.graph())[0]) == expected


def small_graphs():
    out = [H0(), K0(), graphs.build_cycle(5), graphs.build_path(4), LoopGraph(1, frozenset(), {1})]
    for m in (1, 2, 3):
        for stars in itertools.product(range(3), repeat=m):
            if m == 1 and not stars[0]:
                continue
            base = FamilyH(m, stars).graph()
            for r in range(0, 3):
                for loops in itertools.combinations(range(1, base.n + 1), r):
                    out.append(graphs.with_loops(base, loops))
    return out


def test_cover_enumeration_matches_brute_force():
    for g in small_graphs():
        report = covers.cover_ideal(g)
        assert as_sets(report.covers) == set(brute_covers(g))
        assert report.ideal == brute_ideal(g)
        assert report.alpha0 == report.h


def test_decomposition_and_prime_correspondence():
    for g in small_graphs():
        assert covers.decomposition_check(g)
        mins = as_sets(covers.minimal_vertex_covers(g))
        for r in range(g.n + 1):
            for c in itertools.combinations(range(1, g.n + 1), r):
                assert covers.is_minimal_prime(g, c) == (frozenset(c) in mins)


def test_decomposition_examples():
    assert covers.decomposition_check(H0())
    assert covers.decomposition_check(K0())
    assert covers.decomposition_check(LoopGraph(1, frozenset(), {1}))


def test_loop_monotonicity():
    for g in small_graphs():
        before = covers.minimal_vertex_covers(g)
        for v in range(1, g.n + 1):
            if v in g.loops:
                continue
            after = covers.minimal_vertex_covers(graphs.with_loops(g, g.loops | {v}))
            # every new minimal cover is an old one, possibly with v added
            for c in after:
                assert v in c
                assert c in before or (c - {v}) in before


def test_closed_form_examples():
    assert covers.closed_form_cover_ideal(covers.Complete((1, 2, 3))) == parse_ideal(
        "(X2*X3, X1*X3, X1*X2)"
    )
    assert covers.closed_form_cover_ideal(
        covers.CompleteWithLoops((1, 2, 3, 4), frozenset({1, 2, 3, 4}))
    ) == parse_ideal("(X1*X2*X3*X4)")
    outer = covers.closed_form_cover_ideal(covers.HOuterLoops(FamilyH(2, (1, 1))))
    assert outer == parse_ideal("(X2*X3*X4, X1*X3*X4)")
    assert outer == covers.cover_ideal(graphs.with_loops(H0(), {3, 4})).ideal


def test_single_outer_loop_differs_from_all_outer_loops():
    # one loop at vertex 4 of H0 is not enough for the all-outer-loops pattern
    single = covers.cover_ideal(graphs.with_loops(H0(), {4})).ideal
    assert single == parse_ideal("(X1*X4, X2*X3*X4)")


def test_unsupported_cases():
    with pytest.raises(covers.UnsupportedCase):
        covers.closed_form_cover_ideal(covers.Complete((1,)))
    with pytest.raises(covers.UnsupportedCase):
        covers.closed_form_cover_ideal(covers.HAllStars(FamilyH(2, (1, 0))))
    with pytest.raises(covers.UnsupportedCase):
        covers.describe(graphs.build_cycle(5))


def test_size_cap():
    with pytest.raises(ValueError):
        covers.minimal_vertex_covers(graphs.build_path(covers.MAX_VERTICES + 1))


def test_report_serialisation():
    data = covers.cover_ideal(H0()).to_dict()
    assert data == {"ideal": "(X1*X2, X1*X4, X2*X3)", "covers": [[1, 2], [1, 4], [2, 3]],
                    "alpha0": 2, "h": 2}
