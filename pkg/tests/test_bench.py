"""Tests for the extremal example generators and the exact verifier."""
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from sumloc.bench import (NAMES, ParameterError, components, generate, remove_small_box, two_boxes,
                          verify_example)
from sumloc.core_sets import IntervalUnion, measure, sumset


@pytest.mark.parametrize("name, params", [
    ("two_boxes", {}),
    ("two_boxes", {"k": 2, "delta": F(1, 4)}),
    ("ap_boxes", {}),
    ("ap_boxes", {"k": 2, "t": 3}),
    ("scattered", {}),
    ("scattered", {"variant": "continuous", "ell": 3}),
    ("scattered", {"d": 2, "size": 4}),
    ("cone", {}),
    ("cone", {"k": 2, "t": 3}),
])
def test_predictions_match(name, params):
    rep = verify_example(generate(name, **params))
    assert rep.ok, rep.mismatches()


def test_house_closed_forms_disagree_with_construction():
    # the emitted profile has linear coefficient delta t, so the (t-1) forms are off
    inst = generate("house", t=1, delta=F(1, 10))
    bad = {r.name: (r.predicted, r.actual) for r in verify_example(inst).mismatches()}
    assert bad == {"measure": (3, F(31, 10)), "sumset_measure": (10, F(52, 5))}
    assert inst.annotations["linear_coefficient"] == "1/10"


@pytest.mark.parametrize("t, delta", [(1, F(1, 10)), (2, F(1, 3)), (3, F(1, 2))])
def test_house_direct_predictions_hold(t, delta):
    rep = verify_example(generate("house", t=t, delta=delta))
    assert all(r.match for r in rep.rows if r.source == "derived")
    assert rep.rows[0].actual == (2 * t + 1) + delta * t


def test_two_boxes_ratio_decreases_with_dimension():
    ratios = []
    for k in range(1, 5):
        inst = two_boxes(k)
        A = inst.set
        ratios.append(measure(sumset(A, A)) / 2 ** k / measure(A))
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > 1 + F(1, 5) * math.sqrt(1 - F(1, 25))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_removing_small_box_lowers_doubling(k):
    inst = two_boxes(k)
    A, B = inst.set, remove_small_box(inst)
    assert measure(sumset(B, B)) / measure(B) == 2 ** k
    assert measure(sumset(A, A)) / measure(A) > 2 ** k


def test_remove_small_box_requires_two_boxes():
    with pytest.raises(ParameterError):
        remove_small_box(generate("cone"))


@pytest.mark.parametrize("k, t", [(1, 1), (1, 4), (2, 2), (3, 2)])
def test_cone_algebra(k, t):
    p = generate("cone", k=k, t=t).predicted
    assert p["sumset_measure"].value == p["sumset_measure_algebra"].value


@pytest.mark.parametrize("name, params", [
    ("house", {"delta": 1}),
    ("house", {"t": 0}),
    ("two_boxes", {"delta": 0}),
    ("two_boxes", {"k": 0}),
    ("ap_boxes", {"t": 0}),
    ("cone", {"k": 0}),
    ("scattered", {"variant": "nope"}),
    ("scattered", {"d": 3}),
    ("scattered", {"spacing": 3}),
    ("nosuch", {}),
    ("cone", {"bogus": 1}),
])
def test_parameter_errors(name, params):
    with pytest.raises(ParameterError):
        generate(name, **params)


def test_components():
    assert components(IntervalUnion([(0, 1), (2, 3)])) == 2
    assert sorted(NAMES) == sorted(["two_boxes", "ap_boxes", "scattered", "cone", "house"])


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=20, deadline=None)
@given(st.fractions(F(1, 20), F(19, 20), max_denominator=20))
def test_two_boxes_k1_exact(delta):
    assert verify_example(two_boxes(1, delta)).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(1, 4))
def test_cone_and_ap_boxes_verify(k, t):
    assert verify_example(generate("cone", k=k, t=t)).ok
    assert verify_example(generate("ap_boxes", k=k, t=t)).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(1, 6))
def test_scattered_lattice_verify(ell, size):
    assert verify_example(generate("scattered", ell=ell, size=size)).ok
