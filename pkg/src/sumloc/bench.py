"""Generators for the extremal example families, with predicted statistics and an exact verifier.

Every instance carries predictions tagged by source: ``formula`` values come from
the closed forms stated for the family, ``derived`` values from summing the
generator's own length profile.  ``verify_example`` recomputes each quantity from
the set itself, so a closed form that disagrees with the construction shows up
as a mismatch instead of being patched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from ._exact import fmt, iroot, q
from .core_sets import FiberedSet, IntervalUnion, LatticeSet, Polycube, measure, sumset

NAMES = ("two_boxes", "ap_boxes", "scattered", "cone", "house")

SetKind = Union[IntervalUnion, Polycube, LatticeSet]


@dataclass(frozen=True)
class Prediction:
    value: Fraction
    source: str    # "formula" or "derived"
    note: str = ""


@dataclass
class ExampleInstance:
    name: str
    params: dict
    set: SetKind
    predicted: dict[str, Prediction]
    annotations: dict[str, str] = field(default_factory=dict)
    fibered: Optional[FiberedSet] = None  # component index -> interval, for one-dimensional families


@dataclass(frozen=True)
class DiffRow:
    name: str
    predicted: Fraction
    actual: Fraction
    source: str

    @property
    def match(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class DiffReport:
    name: str
    rows: tuple[DiffRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)

    def mismatches(self) -> list[DiffRow]:
        return [r for r in self.rows if not r.match]


class ParameterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# components

def components(S: SetKind) -> int:
    """Number of connected components (closed pieces that touch are joined)."""
    if isinstance(S, IntervalUnion):
        return len(S.intervals)
    if isinstance(S, LatticeSet):
        raise TypeError("lattice sets have no connected components")
    boxes = list(S.boxes)
    parent = list(range(len(boxes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(boxes)), 2):
        (l1, h1), (l2, h2) = boxes[i], boxes[j]
        if all(a <= d + 1 and c <= b + 1 for a, b, c, d in zip(l1, h1, l2, h2)):
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(boxes))})


def _size(S: SetKind) -> Fraction:
    return measure(S)


# ---------------------------------------------------------------------------
# generators

def _root_floor(x: Fraction, k: int, n: int) -> int:
    """floor(n * x^(1/k)) for rational x >= 0."""
    return iroot(math.floor(x * n ** k), k)


def two_boxes(k: int = 1, delta=Fraction(1, 5), precision: int = 64) -> ExampleInstance:
    """Cubes of volume 1 - delta^2 and delta^2 placed far apart.

    For k = 1 the sides are exact.  For k >= 2 the sides are k-th roots; they are
    rounded down to the grid of mesh 1/precision unless they are exact there.
    """
    delta = q(delta)
    if k < 1:
        raise ParameterError("k must be positive")
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    big_vol, small_vol = 1 - delta ** 2, delta ** 2
    if k == 1:
        a, b = big_vol, small_vol
        v = 2 * (a + b) + 1
        A: SetKind = IntervalUnion([(0, a), (v, v + b)])
    else:
        n = int(precision)
        if n < 1:
            raise ParameterError("precision must be positive")
        ca, cb = _root_floor(big_vol, k, n), _root_floor(small_vol, k, n)
        if ca == 0 or cb == 0:
            raise ParameterError("precision too coarse for this delta")
        a, b = Fraction(ca, n), Fraction(cb, n)
        gap = 2 * (ca + cb) + 1  # in cells: 2C1, C1+C2, 2C2 stay apart along axis 0
        off = (gap,) + (0,) * (k - 1)
        A = Polycube(Fraction(1, n), [((0,) * k, (ca - 1,) * k),
                                      (off, tuple(o + cb - 1 for o in off))], k)
    m = a ** k + b ** k
    half = m + ((a + b) / 2) ** k
    predicted = {
        "measure": Prediction(m, "derived", "a^k + b^k for the emitted sides"),
        "half_sumset_measure": Prediction(half, "formula", "|A| + ((a+b)/2)^k"),
        "components": Prediction(Fraction(2), "derived"),
        "sumset_components": Prediction(Fraction(3), "derived"),
        "small_box_measure": Prediction(b ** k, "derived"),
    }
    if k == 1:
        predicted["half_sumset_measure_closed"] = Prediction(
            1 + ((1 - delta ** 2) + delta ** 2) / 2, "formula", "1 + ((1-d^2) + d^2)/2")
    limit = 1 + float(delta) * math.sqrt(1 - float(delta) ** 2)
    ann = {"large_k_limit_approx": f"{limit:.12g}", "sides": f"{fmt(a)}, {fmt(b)}"}
    return ExampleInstance("two_boxes", {"k": k, "delta": delta, "precision": precision}, A, predicted, ann)


def ap_boxes(k: int = 1, t: int = 2) -> ExampleInstance:
    """t translates of [0,1]^(k-1) x [0,1/t] along a long vector."""
    if k < 1 or t < 1:
        raise ParameterError("need k >= 1 and t >= 1")
    if k == 1:
        w = Fraction(1, t)
        v = 2 * w + 1
        A: SetKind = IntervalUnion((i * v, i * v + w) for i in range(1, t + 1))
    else:
        # scale 1/t: the box is t cells wide in axes 0..k-2 and one cell in axis k-1
        gap = 2 * t + 1
        boxes = []
        for i in range(1, t + 1):
            lo = (i * gap,) + (0,) * (k - 1)
            hi = (i * gap + t - 1,) + (t - 1,) * (k - 2) + (0,)
            boxes.append((lo, hi))
        A = Polycube(Fraction(1, t), boxes, k)
    predicted = {
        "measure": Prediction(Fraction(1), "formula", "|A| = 1"),
        "half_sumset_measure": Prediction(2 - Fraction(1, t), "formula", "2 - 1/t"),
        "components": Prediction(Fraction(t), "derived"),
        "sumset_components": Prediction(Fraction(2 * t - 1), "derived"),
    }
    return ExampleInstance("ap_boxes", {"k": k, "t": t}, A, predicted)


def scattered(ell: int = 2, size: int = 10, variant: str = "lattice", d: int = 1,
              spacing: Optional[int] = None) -> ExampleInstance:
    """A convex piece C together with ell far-apart points S_i = D 3^i.

    ``variant="continuous"``: C = [0, size] in R and the points have measure 0.
    ``variant="lattice"``: C is the proper d-GAP {0..size-1} (d = 1) or
    {0..size-1} + (2 size + 1){0..size-1} (d = 2) in Z.  Powers of 3 keep every
    pairwise sum of scattered points distinct and away from the copies of C.
    """
    if ell < 0 or size < 1:
        raise ParameterError("need ell >= 0 and size >= 1")
    if variant == "continuous":
        c = Fraction(size)
        D = spacing if spacing is not None else int(2 * c) + 1
        if D <= 2 * c:
            raise ParameterError("spacing must exceed twice the diameter of C")
        S = [D * 3 ** i for i in range(ell)]
        A: SetKind = IntervalUnion([(0, c)] + [(s, s) for s in S])
        predicted = {
            "measure": Prediction(c, "derived"),
            "sumset_measure": Prediction((2 + ell) * c, "formula", "(2^k + #S)|A|, k = 1"),
            "components": Prediction(Fraction(1 + ell), "derived"),
        }
        params = {"ell": ell, "size": size, "variant": variant, "spacing": D}
        return ExampleInstance("scattered", params, A, predicted)
    if variant != "lattice":
        raise ParameterError(f"unknown variant {variant!r}")
    if d == 1:
        C = list(range(size))
        two_c = 2 * size - 1
    elif d == 2:
        M = 2 * size + 1
        C = [i + M * j for i in range(size) for j in range(size)]
        two_c = (2 * size - 1) ** 2
    else:
        raise ParameterError("lattice variant supports d in {1, 2}")
    diam = max(C)
    D = spacing if spacing is not None else 2 * diam + 1
    if D <= 2 * diam:
        raise ParameterError("spacing must exceed twice the diameter of C")
    S = [D * 3 ** i for i in range(ell)]
    A = LatticeSet(C + S, dim=1)
    predicted = {
        "count": Prediction(Fraction(len(C) + ell), "derived"),
        "sumset_count": Prediction(Fraction(two_c + ell * len(C) + ell * (ell + 1) // 2), "derived",
                                   "#2C + #S #C + #S(#S+1)/2"),
    }
    params = {"ell": ell, "size": size, "variant": variant, "d": d, "spacing": D}
    return ExampleInstance("scattered", params, A, predicted, {"scattered_points": ",".join(map(str, S))})


def cone(k: int = 1, t: int = 3) -> ExampleInstance:
    """Union over i = 1..t of [0, i]^k + i v."""
    if k < 1 or t < 1:
        raise ParameterError("need k >= 1 and t >= 1")
    v = 2 * t + 1  # [0, n] + n v and [0, n+1] + (n+1) v are apart for n <= 2t
    if k == 1:
        A: SetKind = IntervalUnion((i * v, i * v + i) for i in range(1, t + 1))
    else:
        boxes = [((i * v,) * k, tuple(i * v + i - 1 for _ in range(k))) for i in range(1, t + 1)]
        A = Polycube(1, boxes, k)
    m = sum(Fraction(i) ** k for i in range(1, t + 1))
    ss = sum(Fraction(i) ** k for i in range(2, 2 * t + 1))
    algebra = 2 ** (k + 1) * m - sum(Fraction(2 * i) ** k - Fraction(2 * i - 1) ** k for i in range(1, t + 1)) - 1
    predicted = {
        "measure": Prediction(m, "formula", "sum_{i=1}^t i^k"),
        "sumset_measure": Prediction(ss, "formula", "sum_{i=2}^{2t} i^k"),
        "sumset_measure_algebra": Prediction(algebra, "formula",
                                             "2^{k+1}|A| - sum((2i)^k - (2i-1)^k) - 1"),
        "components": Prediction(Fraction(t), "derived"),
        "sumset_components": Prediction(Fraction(2 * t - 1), "derived"),
    }
    return ExampleInstance("cone", {"k": k, "t": t}, A, predicted)


def house(t: int = 1, delta=Fraction(1, 10)) -> ExampleInstance:
    """Union over |i| <= t of i v + [0, 1 + delta (1 - |i|/t)]."""
    delta = q(delta)
    if t < 1:
        raise ParameterError("t must be positive")
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    heights = {i: 1 + delta * (1 - Fraction(abs(i), t)) for i in range(-t, t + 1)}
    v = math.floor(2 * (1 + delta)) + 1  # exceeds the longest sumset piece 2 + 2 delta
    A = IntervalUnion((i * v, i * v + h) for i, h in heights.items())
    B = FiberedSet({i: [(0, h)] for i, h in heights.items()})
    direct = sum(heights.values(), Fraction(0))
    lin = direct - (2 * t + 1)  # linear coefficient of the emitted profile
    predicted = {
        "measure": Prediction((2 * t + 1) + delta * (t - 1), "formula", "(2t+1) + delta (t-1)"),
        "measure_direct": Prediction(direct, "derived", "sum of 1 + delta (1 - |i|/t)"),
        "sumset_measure": Prediction(2 * (4 * t + 1) + 4 * delta * (t - 1), "formula",
                                     "2(4t+1) + 4 delta (t-1)"),
        "sumset_measure_direct": Prediction(2 * (4 * t + 1) + 4 * lin, "derived",
                                            "2(4t+1) + 4 delta' with delta' = |A| - (2t+1)"),
        "components": Prediction(Fraction(2 * t + 1), "derived"),
        "sumset_components": Prediction(Fraction(4 * t + 1), "derived"),
    }
    return ExampleInstance("house", {"t": t, "delta": delta}, A, predicted,
                           {"linear_coefficient": fmt(lin)}, fibered=B)


_GENERATORS = {"two_boxes": two_boxes, "ap_boxes": ap_boxes, "scattered": scattered,
               "cone": cone, "house": house}


def generate(name: str, **params) -> ExampleInstance:
    if name not in _GENERATORS:
        raise ParameterError(f"unknown example {name!r}; choose from {', '.join(NAMES)}")
    try:
        return _GENERATORS[name](**params)
    except TypeError as exc:
        raise ParameterError(str(exc)) from None


# ---------------------------------------------------------------------------
# verification

def actual_quantity(inst: ExampleInstance, key: str, cache: Optional[dict] = None) -> Fraction:
    """Recompute one named quantity from the set."""
    cache = {} if cache is None else cache
    A = inst.set

    def AA():
        if "AA" not in cache:
            cache["AA"] = sumset(A, A)
        return cache["AA"]

    base = key.removesuffix("_direct").removesuffix("_closed").removesuffix("_algebra")
    if base in ("measure", "count"):
        return _size(A)
    if base in ("sumset_measure", "sumset_count"):
        return _size(AA())
    if base == "half_sumset_measure":
        return _size(AA()) / 2 ** A.dim
    if base == "components":
        return Fraction(components(A))
    if base == "sumset_components":
        return Fraction(components(AA()))
    if base == "small_box_measure":
        return Polycube(A.scale, A.boxes[1:], A.dim).measure if isinstance(A, Polycube) else \
            A.intervals[1][1] - A.intervals[1][0]
    raise KeyError(key)


def verify_example(inst: ExampleInstance) -> DiffReport:
    cache: dict = {}
    rows = tuple(DiffRow(k, p.value, actual_quantity(inst, k, cache), p.source)
                 for k, p in inst.predicted.items())
    return DiffReport(inst.name, rows)


def remove_small_box(inst: ExampleInstance) -> SetKind:
    """two_boxes with the small box deleted."""
    if inst.name != "two_boxes":
        raise ParameterError("only two_boxes has a small box")
    A = inst.set
    if isinstance(A, IntervalUnion):
        return IntervalUnion([A.intervals[0]])
    return Polycube(A.scale, A.boxes[:1], A.dim)
