"""Tests for GAPs, convex progressions, boxes and the separated lift."""
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sumloc.geometry import HPolytope
from sumloc.progressions import (Box, ConvexProgression, Gap, LiftError, enumerate_gap, freiman_violation,
                                 gauss_count, is_box_separated, is_full, is_proper, lift)


def numbers(P):
    return enumerate_gap(P).as_numbers()


@pytest.mark.parametrize("steps, lengths, expected, collisions", [
    ([1, 10], [3, 2], [11, 12, 13, 21, 22, 23], 0),
    ([1, 2], [3, 2], [3, 4, 5, 6, 7], 1),
    ([], [], [0], 0),
])
def test_enumerate_gap(steps, lengths, expected, collisions):
    P = Gap((0,), [(a,) for a in steps], lengths)
    vals = enumerate_gap(P)
    assert vals.as_numbers() == expected
    assert vals.collisions == collisions


@pytest.mark.parametrize("s, expected", [(1, True), (2, False)])
def test_is_proper_gap(s, expected):
    assert is_proper(Gap((0,), [(1,), (3,)], [3, 3]), s) is expected


def test_is_proper_two_fold_count():
    # 2C has 25 index points but only 17 distinct values
    P = ConvexProgression(HPolytope.box((1, 1), (3, 3)), [(1, 3)])
    assert len(P.lattice_points(2)) == 25
    assert len(P.values(2)) == 17
    assert not is_proper(P, 2)


@pytest.mark.parametrize("s", [1, 2, 5])
def test_zero_dimensional_is_proper_and_full(s):
    P = Gap((F(1, 3),), [], [])
    assert is_proper(P, s)
    assert is_full(P, s)


@pytest.mark.parametrize("n, expected", [(3, True), (4, False)])
def test_is_full_box(n, expected):
    P = ConvexProgression(HPolytope.box((1, 1), (3, 3)), [(1, 0), (0, 1)])
    assert is_full(P, n) is expected


@pytest.mark.parametrize("C, n, expected", [
    (HPolytope.box((-1,), (1,)), 10, 21),
    (HPolytope.box((-1, -1), (1, 1)), 5, 121),
    (HPolytope.from_rows([(0, -1, 0), (0, 0, -1), (1, 1, 1)]), 4, 15),
])
def test_gauss_count(C, n, expected):
    assert gauss_count(C, n) == expected


def test_box_membership_and_volume():
    Q = Box((0, 0), [(1, 1), (1, -1)])
    assert Q.contains((2, 0))
    assert not Q.contains((2, F(1, 10)))
    assert Q.volume == 8
    assert Box.interval(F(-3, 20), F(3, 20)).add_generator((F(2, 5),)).to_interval_union().intervals == \
        ((F(-11, 20), F(11, 20)),)


@pytest.mark.parametrize("point, lam, q", [
    (F(11, 2), (1,), F(1, 2)),
    (11, (2,), 1),
])
def test_lift_examples(point, lam, q):
    P = Gap((0,), [(5,)], [3])
    (res,) = lift(P, Box.symmetric_interval(1), [(point,)])
    assert res.lam == lam
    assert res.q == (q,)


@pytest.mark.parametrize("P, Q, pts, reason", [
    (Gap((0,), [(2,)], [2]), Box.symmetric_interval(1), [(2,)], "not_separated"),
    (Gap((0,), [(1,), (3,)], [3, 3]), Box.symmetric_interval(F(1, 100)), [(4,)], "not_proper"),
    (Gap((0,), [(5,)], [3]), Box.symmetric_interval(1), [(7,)], "not_in_P_plus_Q"),
])
def test_lift_errors(P, Q, pts, reason):
    with pytest.raises(LiftError) as err:
        lift(P, Q, pts)
    assert err.value.reason == reason


def test_lift_needs_two_fold_separation():
    """P is 2-proper and 4Q-separated, yet the lift breaks a coincidence of P+Q.

    17/2 + 14 and 23/2 + 23/2 differ by 1/2, which lies in 4Q, so the hypothesis
    does not control sums of two elements of P.
    """
    P = Gap((0,), [(F(11, 2),), (3,)], [3, 2])
    Q = Box.symmetric_interval(F(1, 5))
    assert is_proper(P, 2) and is_box_separated(P, Q) is None
    xs = [(F(87, 10),), (F(71, 5),), (F(229, 20),)]
    assert xs[0][0] + xs[1][0] == 2 * xs[2][0]
    ys = [x.as_vector() for x in lift(P, Q, xs)]
    assert freiman_violation(xs, ys, 2) is not None


def test_freiman_violation_detects_broken_map():
    assert freiman_violation([(0,), (1,), (2,)], [(0,), (1,), (2,)]) is None
    assert freiman_violation([(0,), (1,), (2,)], [(0,), (1,), (3,)]) is not None


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=2), st.lists(st.integers(1, 3), min_size=2, max_size=2),
       st.integers(-20, 20))
def test_enumerate_translates(steps, lengths, v):
    lengths = lengths[:len(steps)]
    P = Gap((0,), [(a,) for a in steps], lengths)
    assert numbers(P.translate((v,))) == [x + v for x in numbers(P)]


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=F(1, 2), max_value=2, max_denominator=3),
       st.fractions(min_value=F(1, 2), max_value=2, max_denominator=3))
def test_gauss_asymptotics_symmetric_box(a, b):
    # (2na - 1)(2nb - 1) <= count <= (2na + 1)(2nb + 1) gives K_C = 2a + 2b + 1
    C = HPolytope.box((-a, -b), (a, b))
    vol = 4 * a * b
    for m in (4, 8, 16):
        assert m * abs(F(gauss_count(C, m), m * m) - vol) <= 2 * a + 2 * b + 1
    ratio = F(gauss_count(C, 1), vol)
    assert F(1, 16) <= ratio <= 16


@st.composite
def separated_lifts(draw):
    """1-D P, Q with P 2-proper and 2P (hence P) 4Q-separated, plus points of P+Q."""
    a1 = draw(st.integers(3, 12))
    a2 = draw(st.integers(1, 40)) + F(draw(st.integers(0, 3)), 4)
    P = Gap((0,), [(a1,), (a2,)], [draw(st.integers(1, 3)), draw(st.integers(1, 2))])
    r = F(1, draw(st.sampled_from([8, 10, 20])))
    Q = Box.symmetric_interval(r)
    return P, Q


@settings(max_examples=40, deadline=None)
@given(separated_lifts())
def test_lift_is_freiman_isomorphism_under_two_fold_separation(PQ):
    P, Q = PQ
    vals = numbers(P)
    r = Q.generators[0][0]
    sums = sorted({x + y for x in vals for y in vals})
    if not is_proper(P, 2) or any(b - a <= 4 * r for a, b in zip(sums, sums[1:])):
        return
    pts = [(p + j * r / 2,) for p, j in product(vals, range(-2, 3))]
    ys = [x.as_vector() for x in lift(P, Q, pts)]
    assert freiman_violation(pts, ys, 2) is None
