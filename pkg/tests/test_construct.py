"""Tests for stretch-and-project merging, snapping, separation boosting and Ruzsa covers."""
from fractions import Fraction as F
from itertools import combinations_with_replacement

import pytest
from hypothesis import assume, given, settings, strategies as st

from sumloc.construct import (BoxLocality, IntervalLocality, NoClosePair, contained_line_sum, merge_contains_1d,
                              merge_step, ruzsa_report, separation_gamma, snap, stretch_and_project)
from sumloc.core_sets import IntervalUnion, LatticeSet
from sumloc.geometry import HPolytope
from sumloc.progressions import Box, ConvexProgression

SQUARE = HPolytope.box((-1, -1), (1, 1))


@pytest.mark.parametrize("C, rho, m", [
    (SQUARE, (1, 0), 2),
    (HPolytope.box((0,), (1,)), (1,), 1),
    (SQUARE, (1, 1), 2),
])
def test_stretch_and_project(C, rho, m):
    st_ = stretch_and_project(C, rho)
    assert st_.m == m and st_.contained


def test_merge_step_fixture():
    P = ConvexProgression(HPolytope.box((-2,), (2,)), [(F(1, 10),)], symmetric=True)
    Q = Box.symmetric_interval(F(3, 20))
    out = merge_step(P, Q, 1, 1)
    assert out.rho == (1,) and out.m == 4
    assert out.P_new.d == 0 and out.P_new.values() == [(0,)]
    assert out.Q_new.to_interval_union().intervals == ((F(-11, 20), F(11, 20)),)
    assert out.contained and merge_contains_1d(P, Q, out)


@pytest.mark.parametrize("C, phi", [
    (HPolytope.box((-1,), (1,)), [(5,)]),
    (HPolytope.box((0,), (0,)), [(5,)]),
])
def test_merge_step_no_close_pair(C, phi):
    with pytest.raises(NoClosePair):
        merge_step(ConvexProgression(C, phi, symmetric=True), Box.symmetric_interval(F(1, 10)), 1, 1)


def test_snap_three_term_ap():
    cert = snap([0, 1, F(2001, 1000)], IntervalLocality(F(1, 100)), 2)
    assert [p[0] for p in cert.snapped] == [0, F(2001, 2000), F(2001, 1000)]
    assert cert.verified and cert.c_prime <= cert.c
    assert len(cert.relations) == 1


def test_snap_without_relations_is_identity():
    cert = snap([0, 5, 17], IntervalLocality(F(1, 100)), 2)
    assert all(f == (0,) for f in cert.f)
    assert cert.relations == ()


def test_snap_four_term_ap():
    cert = snap([0, F(5001, 10000), 1, F(3, 2)], IntervalLocality(F(1, 1000)), 2)
    assert [p[0] for p in cert.snapped] == [0, F(1, 2), 1, F(3, 2)]
    assert cert.verified


def test_snap_plane():
    L = BoxLocality(Box((0, 0), [(F(1, 20), 0), (0, F(1, 20))]))
    X = [(0, 0), (1, F(1, 100)), (2, 0), (0, 1)]
    cert = snap(X, L, 2)
    assert cert.verified
    a, b, c = cert.snapped[:3]
    assert tuple(x + z for x, z in zip(a, c)) == tuple(2 * y for y in b)


@pytest.mark.parametrize("Y, lam, gamma, case", [
    ([0, 10], 2, 1, "d1>lambda"),
    ([0], 2, 1, "vacuous"),
    ([0, 2, 40], 3, 2, "gap"),
])
def test_separation_gamma(Y, lam, gamma, case):
    rep = separation_gamma(Y, IntervalLocality(1), 1, lam)
    assert (rep.gamma, rep.case) == (gamma, case)
    assert rep.verified


@pytest.mark.parametrize("A, B, max_x", [
    (IntervalUnion([(0, 3)]), IntervalUnion([(0, 1)]), 4),
    (IntervalUnion([(0, 1)]), IntervalUnion([(0, 1)]), 1),
    (LatticeSet([(0,), (10,)]), LatticeSet([(0,), (1,), (2,)]), 2),
])
def test_ruzsa_cover(A, B, max_x):
    rep = ruzsa_report(A, B)
    assert rep.ok and len(rep.X) <= max_x


@pytest.mark.parametrize("C, x, l", [
    ((-1, 2), (1,), 2),
    ([(-1, -1), (1, -1), (1, 1), (-1, 1)], (1, 0), 1),
    ([(0, 0), (3, 0), (0, 2)], (1, 1), 3),
])
def test_contained_line_sum(C, x, l):
    lhs, rhs = contained_line_sum(C, x, l)
    assert lhs <= rhs


# ---------------------------------------------------------------------------
# properties

@st.composite
def symmetric_progressions(draw):
    d = draw(st.integers(1, 2))
    radius = [draw(st.integers(1, 3)) for _ in range(d)]
    C = HPolytope.box(tuple(-r for r in radius), tuple(radius))
    phi = [tuple(draw(st.fractions(F(-3), F(3), max_denominator=10)) for _ in range(d))]
    Q = Box.symmetric_interval(draw(st.fractions(F(1, 20), F(1, 2), max_denominator=20)))
    return ConvexProgression(C, phi, symmetric=True), Q


@settings(max_examples=25, deadline=None)
@given(symmetric_progressions())
def test_merge_step_properties(PQ):
    P, Q = PQ
    try:
        out = merge_step(P, Q, 1, 1)
    except NoClosePair:
        assume(False)
    assert out.contained and merge_contains_1d(P, Q, out)
    assert out.P_new.d == P.d - 1
    assert out.Q_new == Q.add_generator(tuple(out.m * v for v in P.apply(out.rho)))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.sampled_from([F(1, 10), F(1, 20)]), st.lists(st.integers(-4, 4), min_size=5, max_size=5),
       st.fractions(F(1, 3), 3, max_denominator=3))
def test_snap_restores_perturbed_ap(n, r, noise, step):
    X = [i * step + noise[i] * r / 32 for i in range(n)]
    L = IntervalLocality(r)
    cert = snap(X, L, 2)
    assert cert.verified
    Y = [p[0] for p in cert.snapped]
    for i, j, k in combinations_with_replacement(range(n), 3):
        if i + k == 2 * j:
            assert Y[i] + Y[k] == 2 * Y[j]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(0, 6, max_denominator=20), min_size=2, max_size=4, unique=True))
def test_snap_idempotent(X):
    L = IntervalLocality(F(1, 50))
    first = snap(X, L, 2)
    again = snap([p[0] for p in first.snapped], L, 2)
    assert again.verified
    assert all(f == (0,) for f in again.f)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.fractions(0, 20, max_denominator=4), st.fractions(0, 2, max_denominator=4)),
                min_size=1, max_size=4),
       st.lists(st.tuples(st.fractions(0, 5, max_denominator=4), st.fractions(F(1, 4), 2, max_denominator=4)),
                min_size=1, max_size=2))
def test_ruzsa_cover_random(a, b):
    A = IntervalUnion((x, x + w) for x, w in a)
    B = IntervalUnion((x, x + w) for x, w in b)
    assert ruzsa_report(A, B).ok


@settings(max_examples=40, deadline=None)
@given(st.fractions(-3, 0, max_denominator=4), st.fractions(F(1, 4), 3, max_denominator=4),
       st.fractions(0, 1, max_denominator=4), st.integers(1, 4))
def test_contained_line_sum_random(lo, hi, t, l):
    x = lo + t * (hi - lo)
    lhs, rhs = contained_line_sum((lo, hi), (x,), l)
    assert lhs <= rhs
