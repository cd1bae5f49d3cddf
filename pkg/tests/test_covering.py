"""Tests for interval covers, GAP covers, fibred hulls and AP covers."""
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from sumloc.core_sets import FiberedSet, IntervalUnion, LatticeSet, sumset
from sumloc.covering import (INF, InfeasibleCover, ap_cover, ap_cover_constraints, ap_cover_contains, co11,
                             co_t_1d, cover_chain, gap_cover, gap_cover_exhaustive, is_compressed, nondeg_check,
                             t_references)
from sumloc.lp import vertex_optimum


def L(*xs):
    return LatticeSet((x,) for x in xs)


def bounded_optimum(c, A, b, bound=10 ** 4):
    """Vertex oracle after boxing every variable, so the polyhedron is pointed."""
    n = len(c)
    box = [[(1 if j == i else 0) * sgn for j in range(n)] for i in range(n) for sgn in (1, -1)]
    return vertex_optimum(c, list(A) + box, list(b) + [bound] * (2 * n))


@pytest.mark.parametrize("ivs, t, measure", [
    ([(0, 1), (10, 11)], 2, 2),
    ([(0, 1), (10, 11)], 1, 11),
    ([(0, 1), (5, 6), (10, 12)], 2, 8),
])
def test_co_t_1d(ivs, t, measure):
    C = co_t_1d(IntervalUnion(ivs), t)
    assert C.measure == measure
    assert IntervalUnion(ivs).issubset(C)


def test_gap_cover_two_aps():
    res = gap_cover(L(0, 1, 2, 10, 11, 12), 1, 2)
    assert res.optimal and res.size == 6
    assert res.X == (0, 10)
    assert sorted(res.cover_set().values()) == [0, 1, 2, 10, 11, 12]


@pytest.mark.parametrize("d, t", [(0, 1), (1, 1), (2, 3)])
def test_gap_cover_singleton(d, t):
    assert gap_cover(L(5), d, t).size == 1


def test_gap_cover_infeasible():
    res = gap_cover(LatticeSet.interval(0, 9), 0, 2)
    assert res.size == INF and not res.feasible and res.optimal


def test_gap_cover_budget_exceeded_is_not_optimal():
    res = gap_cover(L(0, 3, 7, 8, 15, 19, 20), 2, 3, budget=5)
    assert not res.optimal


@pytest.mark.parametrize("A, d, t, expected", [
    (LatticeSet.interval(0, 9), 1, 2, True),
    (L(0, 100), 1, 2, False),
    (LatticeSet.interval(0, 9), 2, 1, True),
])
def test_nondeg_check(A, d, t, expected):
    assert nondeg_check(A, d, t) is expected


@pytest.mark.parametrize("h, hull_heights, excess", [
    ((2, F(1, 2), 1), (2, F(3, 2), 1), 1),
    ((1, 1, 1), (1, 1, 1), 0),
    ((1, 2, 3), (1, 2, 3), 0),
])
def test_co11(h, hull_heights, excess):
    B = FiberedSet({i + 1: (0, hi) for i, hi in enumerate(h)})
    res = co11(B)
    assert [res.hull[i + 1].measure for i in range(3)] == list(hull_heights)
    assert res.excess == excess


def test_co11_rescales_indices():
    B = FiberedSet({0: (0, 2), 4: (0, F(1, 2)), 8: (0, 1)})
    assert co11(B).excess == 1


def test_ap_cover_exact_fit():
    B = FiberedSet({0: (0, 1), 1: (10, 12), 2: (20, 23)})
    cov = ap_cover(B, 3)
    assert cov.total_length == 6 == B.measure
    assert ap_cover_contains(cov, B)


def test_ap_cover_single():
    assert ap_cover(FiberedSet({0: (0, 1)}), 1).total_length == 1


def test_ap_cover_two_fibres():
    cov = ap_cover(FiberedSet({0: (0, 1), 1: (10, F(23, 2))}), 2)
    assert (cov.first_length, cov.length_step, cov.total_length) == (1, F(1, 2), F(5, 2))


def test_ap_cover_matches_vertex_oracle():
    B = FiberedSet({0: (0, 1), 1: (3, 7), 2: (9, 10)})
    cov = ap_cover(B, 3)
    c, A, b = ap_cover_constraints(B, 3)
    assert cov.total_length == bounded_optimum(c, A, b)


def test_ap_cover_infeasible():
    with pytest.raises(InfeasibleCover):
        ap_cover(FiberedSet({0: (0, 10), 1: (1, 2), 2: (20, 30)}), 3)


@pytest.mark.parametrize("lengths, t1, t2", [
    ((2, 1, 1), 13, 14),
    ((F(5, 2),), 5, 5),
    ((1, 1), 6, 6),
])
def test_t_references(lengths, t1, t2):
    B = FiberedSet({i + 1: (0, l) for i, l in enumerate(lengths)})
    ref = t_references(B)
    assert (ref.t1, ref.t2) == (t1, t2)
    assert ref.identities_hold and ref.inside_sumset and ref.compressed


def test_t_references_needs_single_intervals():
    with pytest.raises(ValueError):
        t_references(FiberedSet({1: [(0, 1), (2, 3)]}))


def test_cover_chain_symmetric_restriction():
    # sco is the symmetric-P restriction of the same search, so it can only be larger
    A = L(0, 1, 2, 3)
    ch = cover_chain(A, 1, 1)
    assert ch.co == ch.gap == 4
    assert ch.sco == 5


# ---------------------------------------------------------------------------
# properties

@st.composite
def lattice_sets(draw, max_size=6, diam=14):
    pts = draw(st.lists(st.integers(0, diam), min_size=1, max_size=max_size, unique=True))
    return LatticeSet((p,) for p in pts)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 40), st.integers(0, 4)), min_size=1, max_size=5))
def test_co_t_monotone(raw):
    A = IntervalUnion((a, a + w) for a, w in raw)
    sizes = [co_t_1d(A, t).measure for t in range(1, 6)]
    assert sizes[0] == A.hull().measure
    assert all(x >= y for x, y in zip(sizes, sizes[1:]))


@settings(max_examples=40, deadline=None)
@given(lattice_sets(), st.integers(0, 2), st.integers(1, 3))
def test_gap_cover_matches_exhaustive(A, d, t):
    res = gap_cover(A, d, t)
    assert res.optimal
    assert res.size == gap_cover_exhaustive(A, d, t)
    if res.feasible:
        assert A.issubset(res.cover_set()) and len(res.X) <= t


@settings(max_examples=30, deadline=None)
@given(lattice_sets(max_size=5), st.integers(1, 2))
def test_cover_chain_ordering(A, t):
    ch = cover_chain(A, 1, t)
    assert ch.co <= ch.gap <= ch.sco


@st.composite
def fibered_sets(draw, max_fibres=4):
    n = draw(st.integers(1, max_fibres))
    return FiberedSet({i: (0, draw(st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4)))
                       for i in range(n)})


@settings(max_examples=50, deadline=None)
@given(fibered_sets())
def test_co11_contains_and_idempotent(B):
    res = co11(B)
    assert B.issubset(res.hull) and res.excess >= 0
    again = co11(res.hull)
    assert again.hull == res.hull and again.excess == 0


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.fractions(min_value=0, max_value=3, max_denominator=4),
                          st.fractions(min_value=0, max_value=3, max_denominator=4)), min_size=1, max_size=3),
       st.integers(0, 1000))
def test_ap_cover_optimal_against_random_feasible(raw, seed):
    # fibres spaced far apart so a feasible AP cover always exists
    B = FiberedSet({i: (20 * i + a, 20 * i + a + w) for i, (a, w) in enumerate(raw)})
    cov = ap_cover(B, len(raw))
    assert ap_cover_contains(cov, B) and cov.is_valid()
    rng = random.Random(seed)
    c, A, b = ap_cover_constraints(B, len(raw))
    for _ in range(20):
        x = [F(rng.randint(-40, 40), 4) for _ in c]
        if all(sum(ai * xi for ai, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            assert cov.total_length <= sum(ci * xi for ci, xi in zip(c, x))
    assert cov.total_length == bounded_optimum(c, A, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4), min_size=1, max_size=5))
def test_t_reference_identities(lengths):
    lengths = sorted(lengths, reverse=True)
    B = FiberedSet({i + 1: (0, l) for i, l in enumerate(lengths)})
    assert is_compressed(B)
    ref = t_references(B)
    assert ref.identities_hold and ref.inside_sumset
    assert max(ref.t1, ref.t2) <= sumset(B, B).measure
