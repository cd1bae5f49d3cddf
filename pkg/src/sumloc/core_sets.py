"""Exact finite sets: lattice sets, interval unions, polycubes and fibered sets.

All four kinds are immutable.  Sumsets, dilations and measures are exact; the
only numerical library used is numpy, for counting cells of box unions on a
coordinate-compressed grid (integer counts, no floating point).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from ._exact import BudgetExceeded, gcd_all, in_lattice, lattice_basis, lcm_all, q, vec
from .geometry import convex_hull_2d, point_in_polygon
from .lp import feasible_point

DEFAULT_BUDGET = 10 ** 6


# ---------------------------------------------------------------------------
# LatticeSet

def _as_point(p) -> tuple[int, ...]:
    if isinstance(p, (int, np.integer)) and not isinstance(p, bool):
        return (int(p),)
    if isinstance(p, Fraction):
        if p.denominator != 1:
            raise ValueError(f"non-integer point {p}")
        return (int(p),)
    out = []
    for c in p:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integer coordinate {c}")
            c = int(c)
        out.append(int(c))
    return tuple(out)


class LatticeSet:
    """A finite subset of Z^k, stored as a sorted tuple of integer k-tuples."""

    __slots__ = ("dim", "points", "_set")

    def __init__(self, points: Iterable = (), dim: Optional[int] = None):
        pts = sorted({_as_point(p) for p in points})
        if dim is None:
            if not pts:
                raise ValueError("dimension of an empty LatticeSet must be given")
            dim = len(pts[0])
        if dim < 1:
            raise ValueError("dimension must be positive")
        if any(len(p) != dim for p in pts):
            raise ValueError("points of mixed dimension")
        self.dim = dim
        self.points = tuple(pts)
        self._set = frozenset(pts)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "LatticeSet":
        return cls(range(lo, hi + 1), dim=1)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        try:
            return _as_point(p) in self._set
        except (TypeError, ValueError):
            return False

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeSet) and self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        if self.dim == 1:
            return f"LatticeSet({[p[0] for p in self.points]})"
        return f"LatticeSet({list(self.points)}, dim={self.dim})"

    def values(self) -> list[int]:
        """Coordinates of a 1-dimensional set as plain ints."""
        if self.dim != 1:
            raise ValueError("values() needs a 1-dimensional set")
        return [p[0] for p in self.points]

    @property
    def measure(self) -> Fraction:
        return Fraction(len(self.points))

    def translate(self, v) -> "LatticeSet":
        v = _as_point(v)
        return LatticeSet((tuple(a + b for a, b in zip(p, v)) for p in self.points), self.dim)

    def negate(self) -> "LatticeSet":
        return LatticeSet((tuple(-a for a in p) for p in self.points), self.dim)

    def union(self, other: "LatticeSet") -> "LatticeSet":
        return LatticeSet(self._set | other._set, self.dim)

    def difference(self, other: "LatticeSet") -> "LatticeSet":
        return LatticeSet(self._set - other._set, self.dim)

    def issubset(self, other: "LatticeSet") -> bool:
        return self._set <= other._set

    def diameter(self) -> int:
        """Largest coordinate spread."""
        if not self.points:
            return 0
        return max(max(p[i] for p in self.points) - min(p[i] for p in self.points) for i in range(self.dim))


# ---------------------------------------------------------------------------
# IntervalUnion

class IntervalUnion:
    """A finite union of closed rational intervals in R (points allowed)."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Sequence] = ()):
        ivs = []
        for iv in intervals:
            lo, hi = q(iv[0]), q(iv[1])
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            ivs.append((lo, hi))
        ivs.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in ivs:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    @classmethod
    def points(cls, pts: Iterable) -> "IntervalUnion":
        return cls((p, p) for p in pts)

    @property
    def dim(self) -> int:
        return 1

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalUnion) and self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        return "IntervalUnion(" + ", ".join(f"[{lo}, {hi}]" for lo, hi in self.intervals) + ")"

    def hull(self) -> "IntervalUnion":
        if not self.intervals:
            return self
        return IntervalUnion([(self.intervals[0][0], self.intervals[-1][1])])

    @property
    def lo(self) -> Fraction:
        return self.intervals[0][0]

    @property
    def hi(self) -> Fraction:
        return self.intervals[-1][1]

    def contains(self, x) -> bool:
        x = q(x)
        return any(lo <= x <= hi for lo, hi in self.intervals)

    __contains__ = contains

    def covers(self, lo, hi) -> bool:
        """True iff [lo, hi] lies inside one component."""
        lo, hi = q(lo), q(hi)
        return any(a <= lo and hi <= b for a, b in self.intervals)

    def issubset(self, other: "IntervalUnion") -> bool:
        return all(other.covers(lo, hi) for lo, hi in self.intervals)

    def translate(self, v) -> "IntervalUnion":
        v = q(v if not isinstance(v, (tuple, list)) else v[0])
        return IntervalUnion((lo + v, hi + v) for lo, hi in self.intervals)

    def scale(self, c) -> "IntervalUnion":
        c = q(c)
        if c >= 0:
            return IntervalUnion((lo * c, hi * c) for lo, hi in self.intervals)
        return IntervalUnion((hi * c, lo * c) for lo, hi in self.intervals)

    def negate(self) -> "IntervalUnion":
        return self.scale(-1)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.intervals + other.intervals)

    def intersection(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo <= hi:
                    out.append((lo, hi))
        return IntervalUnion(out)

    def gaps(self) -> list[tuple[Fraction, Fraction]]:
        """Open gaps between consecutive components, left to right."""
        return [(self.intervals[i][1], self.intervals[i + 1][0]) for i in range(len(self.intervals) - 1)]

    def components(self) -> list["IntervalUnion"]:
        return [IntervalUnion([iv]) for iv in self.intervals]


# ---------------------------------------------------------------------------
# Polycube

CellBox = tuple[tuple[int, ...], tuple[int, ...]]


def _box_contains(outer: CellBox, inner: CellBox) -> bool:
    return all(a <= c and d <= b for a, b, c, d in zip(outer[0], outer[1], inner[0], inner[1]))


def _union_cell_count(boxes: Sequence[CellBox], k: int) -> int:
    """Number of unit cells in a union of integer cell boxes (inclusive ranges)."""
    if not boxes:
        return 0
    axes = []
    for i in range(k):
        cuts = sorted({b[0][i] for b in boxes} | {b[1][i] + 1 for b in boxes})
        axes.append(cuts)
    mask = np.zeros(tuple(len(c) - 1 for c in axes), dtype=bool)
    for lo, hi in boxes:
        idx = tuple(slice(int(np.searchsorted(axes[i], lo[i])), int(np.searchsorted(axes[i], hi[i] + 1)))
                    for i in range(k))
        mask[idx] = True
    widths = [np.array([c[j + 1] - c[j] for j in range(len(c) - 1)], dtype=object) for c in axes]
    weight = widths[0]
    for w in widths[1:]:
        weight = np.multiply.outer(weight, w)
    return int(weight[mask].sum()) if mask.any() else 0


class Polycube:
    """The set S*c + [0, c]^k for a finite S in Z^k, kept as a union of cell boxes.

    A box ``(lo, hi)`` stands for the cells ``lo <= s <= hi`` (inclusive), so it
    covers ``[c*lo, c*(hi+1)]`` in each coordinate.
    """

    __slots__ = ("scale", "dim", "boxes", "_count")

    def __init__(self, scale, boxes: Iterable[Sequence], dim: Optional[int] = None):
        self.scale = q(scale)
        if self.scale <= 0:
            raise ValueError("polycube scale must be positive")
        bx = []
        for lo, hi in boxes:
            lo, hi = tuple(int(v) for v in lo), tuple(int(v) for v in hi)
            if any(a > b for a, b in zip(lo, hi)):
                raise ValueError("empty cell box")
            bx.append((lo, hi))
        if dim is None:
            if not bx:
                raise ValueError("dimension of an empty Polycube must be given")
            dim = len(bx[0][0])
        bx = sorted(set(bx))
        if len(bx) <= 400:
            # drop boxes contained in another box (quadratic, so only for small unions)
            keep = [b for b in bx if not any(o != b and _box_contains(o, b) for o in bx)]
        else:
            keep = bx
        self.dim = dim
        self.boxes = tuple(keep)
        self._count: Optional[int] = None

    @classmethod
    def from_cells(cls, scale, cells: Union[LatticeSet, Iterable]) -> "Polycube":
        if not isinstance(cells, LatticeSet):
            cells = LatticeSet(cells)
        return cls(scale, [(p, p) for p in cells], dim=cells.dim)

    @classmethod
    def cube(cls, scale, side_cells: int, k: int, offset: Sequence[int] = ()) -> "Polycube":
        off = tuple(offset) or (0,) * k
        return cls(scale, [(off, tuple(o + side_cells - 1 for o in off))], dim=k)

    @property
    def cell_count(self) -> int:
        if self._count is None:
            self._count = _union_cell_count(self.boxes, self.dim)
        return self._count

    @property
    def measure(self) -> Fraction:
        return self.cell_count * self.scale ** self.dim

    def cells(self, budget: int = DEFAULT_BUDGET) -> LatticeSet:
        """The cell set S (materialised; guarded by a budget)."""
        total = sum(math.prod(h - l + 1 for l, h in zip(lo, hi)) for lo, hi in self.boxes)
        if total > budget:
            raise BudgetExceeded(f"{total} cells exceed budget {budget}")
        pts = set()
        for lo, hi in self.boxes:
            pts.update(product(*(range(l, h + 1) for l, h in zip(lo, hi))))
        return LatticeSet(pts, self.dim)

    def refine(self, factor: int) -> "Polycube":
        """Same set at scale c/factor."""
        f = int(factor)
        return Polycube(self.scale / f,
                        [(tuple(l * f for l in lo), tuple((h + 1) * f - 1 for h in hi)) for lo, hi in self.boxes],
                        self.dim)

    def to_interval_union(self) -> IntervalUnion:
        if self.dim != 1:
            raise ValueError("only 1-dimensional polycubes are interval unions")
        c = self.scale
        return IntervalUnion((c * lo[0], c * (hi[0] + 1)) for lo, hi in self.boxes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polycube) or self.dim != other.dim:
            return False
        a, b = _common_scale(self, other)
        union = Polycube(a.scale, a.boxes + b.boxes, a.dim)
        return a.cell_count == b.cell_count == union.cell_count

    def __hash__(self) -> int:
        return hash((self.dim, self.measure))

    def __repr__(self) -> str:
        return f"Polycube(scale={self.scale}, boxes={list(self.boxes)})"


def _common_scale(a: Polycube, b: Polycube) -> tuple[Polycube, Polycube]:
    if a.scale == b.scale:
        return a, b
    g = Fraction(math.gcd(a.scale.numerator, b.scale.numerator),
                 lcm_all([a.scale.denominator, b.scale.denominator]))
    return a.refine(int(a.scale / g)), b.refine(int(b.scale / g))


# ---------------------------------------------------------------------------
# FiberedSet

class FiberedSet:
    """A finite family of interval unions indexed by integers: the set of (i, x) with x in B_i."""

    __slots__ = ("fibers",)

    def __init__(self, fibers: Mapping[int, object]):
        out = {}
        for i, B in fibers.items():
            if not isinstance(B, IntervalUnion):
                B = IntervalUnion(B if isinstance(B[0], (tuple, list)) else [B])
            if not B:
                raise ValueError(f"fiber {i} is empty")
            out[int(i)] = B
        self.fibers = dict(sorted(out.items()))

    @property
    def measure(self) -> Fraction:
        return sum((B.measure for B in self.fibers.values()), Fraction(0))

    @property
    def indices(self) -> list[int]:
        return list(self.fibers)

    def __len__(self) -> int:
        return len(self.fibers)

    def __getitem__(self, i: int) -> IntervalUnion:
        return self.fibers[i]

    def items(self):
        return self.fibers.items()

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberedSet) and self.fibers == other.fibers

    def __hash__(self) -> int:
        return hash(tuple(self.fibers.items()))

    def __repr__(self) -> str:
        return "FiberedSet({" + ", ".join(f"{i}: {B!r}" for i, B in self.fibers.items()) + "})"

    def issubset(self, other: "FiberedSet") -> bool:
        return all(i in other.fibers and B.issubset(other.fibers[i]) for i, B in self.fibers.items())

    def union(self, other: "FiberedSet") -> "FiberedSet":
        out = dict(self.fibers)
        for i, B in other.fibers.items():
            out[i] = out[i].union(B) if i in out else B
        return FiberedSet(out)


SetValue = Union[LatticeSet, IntervalUnion, Polycube, FiberedSet]


# ---------------------------------------------------------------------------
# operations

def measure(A: SetValue) -> Fraction:
    """Cardinality for lattice sets, Lebesgue measure otherwise."""
    return A.measure


def _check_pair(A, B) -> None:
    if type(A) is not type(B):
        raise TypeError(f"cannot combine {type(A).__name__} with {type(B).__name__}")
    if getattr(A, "dim", None) != getattr(B, "dim", None):
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    empty = (lambda S: len(S.boxes) == 0) if isinstance(A, Polycube) else (lambda S: len(S) == 0)
    if empty(A) or empty(B):
        raise ValueError("sumset of an empty set")


def sumset(A: SetValue, B: SetValue) -> SetValue:
    """The Minkowski sum A+B, exactly."""
    _check_pair(A, B)
    if isinstance(A, LatticeSet):
        return LatticeSet({tuple(x + y for x, y in zip(a, b)) for a in A.points for b in B.points}, A.dim)
    if isinstance(A, IntervalUnion):
        return IntervalUnion((a + c, b + d) for a, b in A.intervals for c, d in B.intervals)
    if isinstance(A, Polycube):
        A, B = _common_scale(A, B)
        boxes = {(tuple(a + c for a, c in zip(lo1, lo2)), tuple(b + d + 1 for b, d in zip(hi1, hi2)))
                 for lo1, hi1 in A.boxes for lo2, hi2 in B.boxes}
        return Polycube(A.scale, boxes, A.dim)
    if isinstance(A, FiberedSet):
        out: dict[int, IntervalUnion] = {}
        for i, X in A.fibers.items():
            for j, Y in B.fibers.items():
                S = sumset(X, Y)
                out[i + j] = out[i + j].union(S) if i + j in out else S
        return FiberedSet(out)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def iterated_sumset(A: SetValue, s: int) -> SetValue:
    """The s-fold sumset A + ... + A."""
    if s < 1:
        raise ValueError("s must be at least 1")
    out = A
    for _ in range(s - 1):
        out = sumset(out, A)
    return out


def dilate(A: SetValue, n: int) -> SetValue:
    """{n x : x in A}."""
    if n < 1:
        raise ValueError("dilation factor must be at least 1")
    if isinstance(A, LatticeSet):
        return LatticeSet((tuple(n * c for c in p) for p in A.points), A.dim)
    if isinstance(A, IntervalUnion):
        return A.scale(n)
    if isinstance(A, Polycube):
        return Polycube(A.scale * n, A.boxes, A.dim)
    if isinstance(A, FiberedSet):
        return FiberedSet({n * i: B.scale(n) for i, B in A.fibers.items()})
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def divide(A: SetValue, n: int) -> SetValue:
    """{x : n x in A}; for continuous sets this is the scaling by 1/n."""
    if n < 1:
        raise ValueError("divisor must be at least 1")
    if isinstance(A, LatticeSet):
        return LatticeSet((tuple(c // n for c in p) for p in A.points if all(c % n == 0 for c in p)), A.dim)
    if isinstance(A, IntervalUnion):
        return A.scale(Fraction(1, n))
    if isinstance(A, Polycube):
        return Polycube(A.scale / n, A.boxes, A.dim)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def doubling(A: SetValue, B: Optional[SetValue] = None) -> Fraction:
    """|A+B| / |A| (B defaults to A)."""
    m = measure(A)
    if m == 0:
        raise ZeroDivisionError("doubling of a null set")
    return measure(sumset(A, A if B is None else B)) / m


# ---------------------------------------------------------------------------
# thickness and hulls

@dataclass(frozen=True)
class Thickness:
    h: int
    normal: tuple[int, ...]
    bound: int


def thickness_report(A: LatticeSet, budget: int = DEFAULT_BUDGET) -> Thickness:
    """Fewest parallel lattice hyperplanes covering A, with the optimal normal.

    Normals are primitive integer vectors with entries bounded by the largest
    coordinate spread of A; the bound is returned so it is visible to callers.
    """
    if len(A) == 0:
        raise ValueError("thickness of an empty set")
    k = A.dim
    if k == 1:
        return Thickness(len(A), (1,), 1)
    bound = max(1, A.diameter())
    if (2 * bound + 1) ** k > budget:
        raise BudgetExceeded(f"normal search of size {(2 * bound + 1) ** k} exceeds budget {budget}")
    best: Optional[Thickness] = None
    for h in product(range(-bound, bound + 1), repeat=k):
        first = next((c for c in h if c != 0), 0)
        if first <= 0 or gcd_all(h) != 1:
            continue
        n = len({sum(a * b for a, b in zip(h, p)) for p in A.points})
        if best is None or n < best.h:
            best = Thickness(n, h, bound)
    return best


def thickness(A: LatticeSet, budget: int = DEFAULT_BUDGET) -> int:
    return thickness_report(A, budget).h


@dataclass(frozen=True)
class Hulls:
    vertices: tuple[tuple[Fraction, ...], ...]
    discrete: LatticeSet
    lattice_basis: tuple[tuple[int, ...], ...]


def _hull_vertices(A: LatticeSet) -> list[tuple[int, ...]]:
    pts = list(A.points)
    if A.dim == 1:
        return sorted({pts[0], pts[-1]})
    if A.dim == 2:
        return [tuple(int(c) for c in v) for v in convex_hull_2d(pts)]
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or not _in_convex_hull(p, others):
            out.append(p)
    return out


def _in_convex_hull(x: Sequence, pts: Sequence[Sequence]) -> bool:
    """Is x a convex combination of pts?  (LP feasibility in the weights.)"""
    n = len(pts)
    k = len(x)
    A_eq = [[pts[j][i] for j in range(n)] for i in range(k)] + [[1] * n]
    b_eq = list(x) + [1]
    A_ub = [[-int(i == j) for j in range(n)] for i in range(n)]
    return feasible_point(A_ub, [0] * n, A_eq, b_eq, n=n) is not None


def hulls(A: LatticeSet, budget: int = DEFAULT_BUDGET) -> Hulls:
    """Convex hull vertices of A and the discrete hull co(A) ∩ (a0 + Λ_A)."""
    if len(A) == 0:
        raise ValueError("hull of an empty set")
    verts = _hull_vertices(A)
    a0 = A.points[0]
    basis = lattice_basis([tuple(p[i] - a0[i] for i in range(A.dim)) for p in A.points], A.dim)
    lo = [min(p[i] for p in A.points) for i in range(A.dim)]
    hi = [max(p[i] for p in A.points) for i in range(A.dim)]
    total = math.prod(h - l + 1 for l, h in zip(lo, hi))
    if total > budget:
        raise BudgetExceeded(f"hull scan of {total} points exceeds budget {budget}")
    if A.dim == 2:
        poly = convex_hull_2d(verts)
    out = []
    for p in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if not in_lattice([p[i] - a0[i] for i in range(A.dim)], basis):
            continue
        if A.dim == 1:
            inside = True
        elif A.dim == 2:
            inside = point_in_polygon(p, poly)
        else:
            inside = p in A or _in_convex_hull(p, verts)
        if inside:
            out.append(p)
    return Hulls(tuple(tuple(Fraction(c) for c in v) for v in verts), LatticeSet(out, A.dim), tuple(basis))


def discrete_hull(A: LatticeSet) -> LatticeSet:
    return hulls(A).discrete


# ---------------------------------------------------------------------------
# separation

@dataclass(frozen=True)
class Separation:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _finite_points(A) -> list[tuple]:
    if isinstance(A, LatticeSet):
        return [tuple(Fraction(c) for c in p) for p in A.points]
    if isinstance(A, IntervalUnion):
        if any(lo != hi for lo, hi in A.intervals):
            raise ValueError("separation is defined here for finite point sets")
        return [(lo,) for lo, _ in A.intervals]
    return sorted({vec(p) for p in A})


def _member(L, x: tuple) -> bool:
    if isinstance(L, LatticeSet):
        return all(c.denominator == 1 for c in x) and tuple(int(c) for c in x) in L
    if isinstance(L, IntervalUnion):
        return L.contains(x[0])
    if hasattr(L, "contains"):
        return L.contains(x)
    raise TypeError(f"unsupported separation set {type(L).__name__}")


def is_symmetric(L) -> bool:
    """0 ∈ L = -L."""
    if isinstance(L, LatticeSet):
        return (0,) * L.dim in L and L.negate() == L
    if isinstance(L, IntervalUnion):
        return L.contains(0) and L.negate() == L
    if hasattr(L, "is_symmetric"):
        return L.is_symmetric()
    raise TypeError(f"cannot check symmetry of {type(L).__name__}")


def is_separated(A, L) -> Separation:
    """A is L-separated iff a - a' ∉ L for all distinct a, a' in A."""
    if not is_symmetric(L):
        raise ValueError("separation set must be symmetric and contain 0")
    pts = sorted(_finite_points(A))
    for a, b in combinations(pts, 2):
        if _member(L, tuple(y - x for x, y in zip(a, b))):
            def show(p):
                if isinstance(A, LatticeSet):
                    p = tuple(int(c) for c in p)
                return p[0] if len(p) == 1 else p
            return Separation(False, (show(a), show(b)))
    return Separation(True)
