"""Exact rational polytope geometry: H-polytopes, lattice points and planar convex polygons."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from ._exact import BudgetExceeded, det, q, vec
from .lp import linprog, vertices as _vertices

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class HPolytope:
    """The polytope {x in R^d : A x <= b}, with rational data.

    Rows are stored as ``(c0, (c1, ..., cd))`` meaning ``c1 x1 + ... + cd xd <= c0``.
    """

    rows: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]
    dim: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], dim: Optional[int] = None) -> "HPolytope":
        """Build from rows ``c0 c1 ... cd`` (the text file convention)."""
        out = []
        for r in rows:
            r = vec(r)
            out.append((r[0], tuple(r[1:])))
        if dim is None:
            if not out:
                raise ValueError("cannot infer dimension of an empty inequality list")
            dim = len(out[0][1])
        if any(len(a) != dim for _, a in out):
            raise ValueError("inconsistent inequality widths")
        return cls(tuple(out), dim)

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "HPolytope":
        lo, hi = vec(lo), vec(hi)
        d = len(lo)
        rows = []
        for i in range(d):
            e = tuple(Fraction(int(j == i)) for j in range(d))
            rows.append((hi[i], e))
            rows.append((-lo[i], tuple(-x for x in e)))
        return cls(tuple(rows), d)

    @property
    def A(self) -> list[tuple[Fraction, ...]]:
        return [a for _, a in self.rows]

    @property
    def b(self) -> list[Fraction]:
        return [c0 for c0, _ in self.rows]

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [(c0,) + a for c0, a in self.rows]

    def contains(self, x: Sequence) -> bool:
        x = vec(x) if self.dim else ()
        return all(sum((ai * xi for ai, xi in zip(a, x)), Fraction(0)) <= c0 for c0, a in self.rows)

    def scale(self, s) -> "HPolytope":
        s = q(s)
        if s <= 0:
            raise ValueError("dilation factor must be positive")
        return HPolytope(tuple((c0 * s, a) for c0, a in self.rows), self.dim)

    def translate(self, v: Sequence) -> "HPolytope":
        v = vec(v)
        return HPolytope(tuple((c0 + sum(ai * vi for ai, vi in zip(a, v)), a) for c0, a in self.rows), self.dim)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        return _vertices(self.A, self.b)

    def is_empty(self) -> bool:
        if self.dim == 0:
            return any(c0 < 0 for c0, _ in self.rows)
        return not linprog([0] * self.dim, self.A, self.b, free=True).ok

    def is_bounded(self) -> bool:
        for i in range(self.dim):
            for sign in (1, -1):
                c = [0] * self.dim
                c[i] = sign
                res = linprog(c, self.A, self.b, free=True)
                if res.status == "unbounded":
                    return False
        return True

    def support(self, h: Sequence, maximize: bool = True) -> Fraction:
        res = linprog(list(h), self.A, self.b, free=True, maximize=maximize)
        if res.status != "optimal":
            raise ValueError(f"support function is {res.status}")
        return res.value

    def bounding_box(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        vs = self.vertices()
        if not vs:
            raise ValueError("empty or unbounded polytope")
        lo = tuple(min(v[i] for v in vs) for i in range(self.dim))
        hi = tuple(max(v[i] for v in vs) for i in range(self.dim))
        return lo, hi

    def is_symmetric(self) -> bool:
        """True iff C = -C, decided on the vertex set."""
        vs = set(self.vertices())
        return bool(vs) and all(tuple(-x for x in v) in vs for v in vs)

    def lattice_points(self, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
        """Sorted list of C ∩ Z^d by bounding-box scan."""
        if self.dim == 0:
            return [()] if not self.is_empty() else []
        vs = self.vertices()
        if not vs:
            return []
        ranges = []
        total = 1
        for i in range(self.dim):
            lo = math.ceil(min(v[i] for v in vs))
            hi = math.floor(max(v[i] for v in vs))
            if hi < lo:
                return []
            ranges.append(range(lo, hi + 1))
            total *= hi - lo + 1
        if total > budget:
            raise BudgetExceeded(f"lattice scan of {total} candidates exceeds budget {budget}")
        return [p for p in product(*ranges) if self.contains(p)]

    def volume(self) -> Fraction:
        """Exact volume for d <= 2 (interval length or polygon area)."""
        if self.dim == 1:
            vs = self.vertices()
            return max(v[0] for v in vs) - min(v[0] for v in vs) if vs else Fraction(0)
        if self.dim == 2:
            return polygon_area(convex_hull_2d(self.vertices()))
        raise NotImplementedError("volume is implemented for d <= 2")


# ---------------------------------------------------------------------------
# planar convex geometry

def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Iterable[Sequence]) -> list[tuple[Fraction, Fraction]]:
    """Counter-clockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted({(q(p[0]), q(p[1])) for p in points})
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(poly: Sequence[Sequence]) -> Fraction:
    n = len(poly)
    if n < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def minkowski_2d(P: Sequence[Sequence], Q: Sequence[Sequence]) -> list[tuple[Fraction, Fraction]]:
    return convex_hull_2d((p[0] + r[0], p[1] + r[1]) for p in P for r in Q)


def point_in_polygon(x: Sequence, poly: Sequence[Sequence]) -> bool:
    """Closed containment in a convex counter-clockwise polygon (or segment/point)."""
    x = (q(x[0]), q(x[1]))
    n = len(poly)
    if n == 0:
        return False
    if n == 1:
        return x == tuple(poly[0])
    if n == 2:
        a, b = poly
        if _cross(a, b, x) != 0:
            return False
        return min(a[0], b[0]) <= x[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= x[1] <= max(a[1], b[1])
    return all(_cross(poly[i], poly[(i + 1) % n], x) >= 0 for i in range(n))


def polygons_overlap(P: Sequence[Sequence], Q: Sequence[Sequence]) -> bool:
    """True iff two convex polygons meet in a set of positive area.

    Separating-axis test: the interiors are disjoint iff some edge normal
    gives projections that meet in at most one point.
    """
    if len(P) < 3 or len(Q) < 3:
        return False
    for poly in (P, Q):
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            nx, ny = b[1] - a[1], a[0] - b[0]
            p1 = [nx * v[0] + ny * v[1] for v in P]
            p2 = [nx * v[0] + ny * v[1] for v in Q]
            if max(p1) <= min(p2) or max(p2) <= min(p1):
                return False
    return True


def simplex_volume(vs: Sequence[Sequence]) -> Fraction:
    d = len(vs) - 1
    M = [[vs[i + 1][j] - vs[0][j] for j in range(d)] for i in range(d)]
    return abs(det(M)) / math.factorial(d)
