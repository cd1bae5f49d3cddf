"""Tests for compressions, discrete Brunn-Minkowski checks and the 3k-4 toolbox."""
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from sumloc._exact import compare
from sumloc.brunn_minkowski import (HybridSet, PreconditionError, addition_bounds, bigstep, bm_separated, compress,
                                    compress_all, cube_bm, fiber_compress, fiber_compress_box, freiman3k4,
                                    projection_sum, projection_terms, secondorder)
from sumloc.core_sets import FiberedSet, IntervalUnion, LatticeSet, sumset
from sumloc.progressions import Box, Gap


def H(*pts):
    return HybridSet.lattice(pts)


@pytest.mark.parametrize("A, i, expected", [
    (H((0, 0), (1, 1)), 2, H((0, 0), (1, 0))),
    (H((0, 0), (1, 0)), 2, H((0, 0), (1, 0))),
    (H((0, 3), (0, 7)), 2, H((0, 0), (0, 1))),
])
def test_compress(A, i, expected):
    assert compress(A, i) == expected


def test_compress_direction_range():
    with pytest.raises(ValueError):
        compress(H((0, 0)), 3)


@pytest.mark.parametrize("A, lhs, rhs", [
    (H((0,), (1,)), 4, 4),
    (H((0,)), 2, 2),
    (H((0, 0), (0, 1), (1, 0), (1, 1)), 16, 16),
])
def test_projection_sum(A, lhs, rhs):
    ineq = projection_sum(A, A)
    assert ineq.lhs == lhs
    assert compare(ineq.rhs, rhs) == 0
    assert ineq.holds and ineq.tight


def test_projection_terms_square():
    terms = projection_terms(H((0, 0), (0, 1), (1, 0), (1, 1)) + H((0, 0), (0, 1), (1, 0), (1, 1)))
    assert sorted(terms.values()) == [1, 3, 3, 9]


def test_cube_bm_hybrid():
    A = HybridSet(1, 1, [((0,), (0,)), ((1,), (0,)), ((1,), (1,))], F(1, 2))
    ineq = cube_bm(A, A)
    assert ineq.holds


def test_bm_separated_zero_dimensional():
    Q = Box.symmetric_interval(1)
    Y = IntervalUnion([(-1, 1)])
    ineq = bm_separated(Gap((0,), [], []), Q, Y, Y, 4)
    assert ineq.lhs == 4
    assert compare(ineq.rhs, 3) == 0
    assert ineq.holds


def test_bm_separated_full_progression():
    P = Gap((-5,), [(5,)], [3])
    Q = Box.symmetric_interval(1)
    Y = IntervalUnion([(-1, 1), (4, 6), (9, 11)])
    ineq = bm_separated(P, Q, Y, Y, 3)
    assert ineq.lhs == 20
    assert ineq.details["slack"] == 16
    assert compare(ineq.rhs, 8) == 0
    assert ineq.holds


@pytest.mark.parametrize("Y, n, message", [
    (IntervalUnion([(3, 5)]), 3, "not contained"),
    (IntervalUnion([(-1, 1)]), 4, "full"),
])
def test_bm_separated_preconditions(Y, n, message):
    with pytest.raises(PreconditionError, match=message):
        bm_separated(Gap((-5,), [(5,)], [3]), Box.symmetric_interval(1), Y, Y, n)


@pytest.mark.parametrize("A, lhs, rhs", [
    (LatticeSet((x,) for x in (0, 1, 2, 4)), 8, 8),
    (IntervalUnion([(0, 1)]), 2, 2),
    (LatticeSet.interval(0, 9), 19, 19),
])
def test_freiman3k4(A, lhs, rhs):
    ineq = freiman3k4(A)
    assert (ineq.lhs, ineq.rhs) == (lhs, rhs)
    assert ineq.holds


@pytest.mark.parametrize("X, Y, bounds, actual", [
    ([(0, 1)], [(0, 1)], (2, 2, 2), 2),
    ([(0, 1)], [(0, 1), (2, 3)], (2, 4, 3), 4),
    ([(0, F(1, 2))], [(0, 1), (2, 3)], (1, 3, 2), 3),
])
def test_addition_bounds(X, Y, bounds, actual):
    res = addition_bounds(IntervalUnion(X), IntervalUnion(Y))
    assert res.bounds == bounds and res.actual == actual and res.holds


def test_addition_bounds_swaps_to_longer_hull():
    res = addition_bounds(IntervalUnion([(0, 1), (2, 3)]), IntervalUnion([(0, 1)]))
    assert res.swapped and res.bounds == (2, 4, 3)


def test_fiber_compress_example():
    B = FiberedSet({1: [(0, 1), (2, 3)], 2: [(0, 1)]})
    C = fiber_compress(B)
    assert C == FiberedSet({1: (0, 2), 2: (0, 1)})
    assert sumset(C, C).measure == 9 <= sumset(B, B).measure == 12


def test_fiber_compress_single_and_reorder():
    assert fiber_compress(FiberedSet({5: (3, 4)})) == FiberedSet({1: (0, 1)})
    assert fiber_compress(FiberedSet({1: (0, 1), 2: (0, 2)})) == FiberedSet({1: (0, 2), 2: (0, 1)})


def test_fiber_compress_box_reports_residual():
    B = FiberedSet({1: (0, 2), 2: (0, 1)})
    res = fiber_compress_box(B, 2, F(1, 8))
    assert res.measure + res.residual == B.measure
    assert 0 <= res.residual


def test_bigstep_example():
    ineq = bigstep([0] + list(range(10, 0, -1)), 1, 5)
    assert (ineq.lhs, ineq.rhs) == (55, F(25, 2))
    assert ineq.details["I"] == [0]


def test_bigstep_empty_steps():
    assert bigstep([3, 3, 3], 1, 5).rhs == 0


def test_bigstep_slope_precondition():
    with pytest.raises(PreconditionError):
        bigstep([5, 0], 1, 1)


@pytest.mark.parametrize("x, y, l", [(1, 1, 2), (1, 2, 3), (F(1, 3), 7, 5), (2, 2, 1)])
def test_secondorder(x, y, l):
    ineq = secondorder(x, y, l)
    assert ineq.holds
    assert ineq.details["certified"] and ineq.details["power_mean_ge_2^l_x"]


def test_secondorder_equal_arguments_are_tight():
    ineq = secondorder(1, 1, 2)
    assert ineq.lhs.exact == 0 and ineq.rhs.exact == 0


def test_secondorder_precondition():
    with pytest.raises(PreconditionError):
        secondorder(2, 1, 2)


# ---------------------------------------------------------------------------
# properties

@st.composite
def hybrid_pairs(draw):
    d = draw(st.integers(1, 2))
    k = draw(st.integers(0, 1))
    cell = st.tuples(st.tuples(*[st.integers(0, 3)] * d), st.tuples(*[st.integers(0, 3)] * k))
    A = HybridSet(d, k, draw(st.lists(cell, min_size=1, max_size=6)), F(1, 2))
    B = HybridSet(d, k, draw(st.lists(cell, min_size=1, max_size=6)), F(1, 2))
    return A, B


@settings(max_examples=60, deadline=None)
@given(hybrid_pairs())
def test_discrete_bm_and_cube_bm(AB):
    A, B = AB
    assert projection_sum(A, B).holds
    assert cube_bm(A, B).holds


@settings(max_examples=60, deadline=None)
@given(hybrid_pairs(), st.integers(1, 2))
def test_compress_properties(AB, i):
    A, B = AB
    if i > A.d:
        i = A.d
    Ci = compress(A, i)
    assert Ci.measure == A.measure
    assert compress(Ci, i) == Ci
    lhs = projection_sum(Ci, compress(B, i)).lhs
    assert lhs <= projection_sum(A, B).lhs
    assert projection_sum(compress_all(A), compress_all(B)).lhs <= projection_sum(A, B).lhs


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(0, 4),
                       st.lists(st.tuples(st.integers(0, 8), st.integers(0, 3)), min_size=1, max_size=3),
                       min_size=1, max_size=4))
def test_fiber_compress_never_increases_sumset(raw):
    B = FiberedSet({i: IntervalUnion((F(a, 2), F(a + w, 2)) for a, w in ivs) for i, ivs in raw.items()})
    C = fiber_compress(B)
    assert C.measure == B.measure
    assert sumset(C, C).measure <= sumset(B, B).measure


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=12, unique=True))
def test_freiman3k4_random(pts):
    assert freiman3k4(LatticeSet((p,) for p in pts)).holds


raw_intervals = st.lists(st.tuples(st.fractions(0, 10, max_denominator=4), st.fractions(0, 3, max_denominator=4)),
                         min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(raw_intervals, raw_intervals)
def test_addition_bounds_random(x, y):
    X = IntervalUnion((a, a + w) for a, w in x)
    Y = IntervalUnion((a, a + w) for a, w in y)
    assert addition_bounds(X, Y).holds


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=8), st.integers(1, 3), st.integers(1, 4))
def test_bigstep_random(f, c, N):
    if any(b - a < -c for a, b in zip(f, f[1:])):
        return
    assert bigstep(f, c, N).holds


@settings(max_examples=40, deadline=None)
@given(st.fractions(F(1, 10), 5, max_denominator=10), st.fractions(0, 5, max_denominator=10), st.integers(1, 6))
def test_secondorder_random(x, extra, l):
    assert secondorder(x, x + extra, l).holds

