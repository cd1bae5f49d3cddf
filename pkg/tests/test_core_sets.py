"""Unit and property tests for the set-value kinds and their sumsets."""
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from sumloc.core_sets import (FiberedSet, IntervalUnion, LatticeSet, Polycube, dilate, divide, doubling, hulls,
                              is_separated, iterated_sumset, sumset, thickness)
from sumloc.bench import generate


def L(*xs):
    return LatticeSet((x,) for x in xs)


def vals(S):
    return S.values()


# ---------------------------------------------------------------------------
# examples

def test_sumset_lattice():
    S = sumset(L(0, 1, 3), L(0, 1, 3))
    assert vals(S) == [0, 1, 2, 3, 4, 6]
    assert len(S) == 6


def test_sumset_interval():
    S = sumset(IntervalUnion([(0, 1)]), IntervalUnion([(0, 1)]))
    assert S.intervals == ((0, 2),)
    assert S.measure == 2


def test_sumset_two_boxes_raw_measure():
    A = IntervalUnion([(0, F(16, 25)), (100, 100 + F(9, 25))])
    assert sumset(A, A).measure == 3


@pytest.mark.parametrize("A, n, expected", [
    ([0, 2], 3, [0, 6]),
    ([1, -2, 5], 2, [-4, 2, 10]),
])
def test_dilate_lattice(A, n, expected):
    assert vals(dilate(L(*A), n)) == expected


def test_divide_lattice():
    assert vals(divide(L(0, 2, 3, 4), 2)) == [0, 1, 2]


def test_divide_interval():
    assert divide(IntervalUnion([(-4, 4)]), 4).intervals == ((-1, 1),)


@pytest.mark.parametrize("A, s, expected", [
    (L(0, 1), 3, [0, 1, 2, 3]),
    (L(0, 1, 3), 2, [0, 1, 2, 3, 4, 6]),
    (L(0, 1, 3), 1, [0, 1, 3]),
])
def test_iterated_sumset_lattice(A, s, expected):
    assert vals(iterated_sumset(A, s)) == expected


def test_iterated_sumset_interval():
    assert iterated_sumset(IntervalUnion([(0, 1)]), 3).intervals == ((0, 3),)


@pytest.mark.parametrize("A, expected", [
    (LatticeSet.interval(0, 9), F(19, 10)),
    (IntervalUnion([(0, 1)]), 2),
])
def test_doubling(A, expected):
    assert doubling(A) == expected


def test_doubling_ap_of_boxes():
    A = generate("ap_boxes", k=1, t=2).set
    assert doubling(A) / 2 == F(3, 2)


def test_doubling_zero_measure_rejected():
    with pytest.raises(ZeroDivisionError):
        doubling(IntervalUnion.points([0, 1]))


@pytest.mark.parametrize("pts, expected", [
    ([(0, 0), (0, 1), (1, 0), (1, 1)], 2),
    ([(0, 0), (1, 2), (2, 4)], 1),
    ([(i,) for i in range(10)], 10),
])
def test_thickness(pts, expected):
    assert thickness(LatticeSet(pts)) == expected


@pytest.mark.parametrize("A, expected", [
    ([0, 2, 4, 5], [0, 1, 2, 3, 4, 5]),
    ([0, 3, 9], [0, 3, 6, 9]),
    ([0], [0]),
])
def test_discrete_hull(A, expected):
    assert vals(hulls(L(*A)).discrete) == expected


def test_hull_vertices_2d():
    H = hulls(LatticeSet([(0, 0), (2, 0), (0, 2), (1, 1), (2, 2)]))
    assert sorted(H.vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    # the points generate the lattice spanned by (1,1) and (0,2)
    assert len(H.discrete) == 5
    assert hulls(LatticeSet([(0, 0), (1, 0), (0, 1), (2, 2)])).discrete.points == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 2))


@pytest.mark.parametrize("A, Lset, ok, witness", [
    (IntervalUnion.points([0, 10, 20]), IntervalUnion([(-4, 4)]), True, None),
    (IntervalUnion.points([0, 3]), IntervalUnion([(-4, 4)]), False, (0, 3)),
    (L(0, 5, 9), LatticeSet.interval(-4, 4), False, (5, 9)),
])
def test_is_separated(A, Lset, ok, witness):
    sep = is_separated(A, Lset)
    assert sep.ok is ok
    if witness is not None:
        assert tuple(sep.witness) == witness


def test_is_separated_needs_symmetric_locality():
    with pytest.raises(ValueError):
        is_separated(L(0, 5), LatticeSet.interval(0, 4))


def test_sumset_errors():
    with pytest.raises(ValueError):
        sumset(LatticeSet([(0, 0)]), L(0))
    with pytest.raises((TypeError, ValueError)):
        sumset(L(0), IntervalUnion([(0, 1)]))


def test_polycube_matches_interval_geometry():
    P = Polycube(F(1, 3), [((0,), (2,)), ((9,), (9,))])
    I = P.to_interval_union()
    assert I.intervals == ((0, 1), (3, F(10, 3)))
    assert sumset(P, P).measure == sumset(I, I).measure


def test_fibered_sumset():
    B = FiberedSet({1: [(0, 1), (2, 3)], 2: [(0, 1)]})
    assert sumset(B, B).measure == 12


# ---------------------------------------------------------------------------
# properties

small_ints = st.lists(st.integers(-15, 15), min_size=1, max_size=7)
rat = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def interval_unions(draw, max_parts=4):
    n = draw(st.integers(1, max_parts))
    ivs = []
    for _ in range(n):
        a = draw(rat)
        w = draw(st.fractions(min_value=0, max_value=3, max_denominator=6))
        ivs.append((a, a + w))
    return IntervalUnion(ivs)


@settings(max_examples=60, deadline=None)
@given(small_ints, small_ints, small_ints)
def test_sumset_commutative_associative(a, b, c):
    A, B, C = L(*a), L(*b), L(*c)
    assert sumset(A, B) == sumset(B, A)
    assert sumset(sumset(A, B), C) == sumset(A, sumset(B, C))


@settings(max_examples=60, deadline=None)
@given(interval_unions(), interval_unions(), interval_unions())
def test_interval_sumset_commutative_associative(A, B, C):
    assert sumset(A, B) == sumset(B, A)
    assert sumset(sumset(A, B), C) == sumset(A, sumset(B, C))


@settings(max_examples=100, deadline=None)
@given(small_ints, small_ints)
def test_cardinality_bounds(a, b):
    A, B = L(*a), L(*b)
    n = len(sumset(A, B))
    assert len(A) + len(B) - 1 <= n <= len(A) * len(B)


@settings(max_examples=100, deadline=None)
@given(interval_unions(), interval_unions())
def test_continuous_lower_bound(A, B):
    assert sumset(A, B).measure >= A.measure + B.measure


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 12), st.integers(0, 3)), min_size=1, max_size=4),
       st.integers(1, 4))
def test_polycube_sumset_matches_intervals(p, r, c):
    P = Polycube(F(1, c), [((a,), (a + w,)) for a, w in p])
    R = Polycube(F(1, c), [((a,), (a + w,)) for a, w in r])
    S = sumset(P, R)
    assert S.measure == sumset(P.to_interval_union(), R.to_interval_union()).measure


@settings(max_examples=100, deadline=None)
@given(small_ints, st.integers(1, 5))
def test_divide_inverts_dilate(a, n):
    A = L(*a)
    assert divide(dilate(A, n), n) == A


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=6))
def test_discrete_hull_contains_and_idempotent(pts):
    A = LatticeSet(pts)
    H = hulls(A).discrete
    assert A.issubset(H)
    assert hulls(H).discrete == H
