"""Compressions, discrete Brunn-Minkowski bounds and the 3k-4 toolbox, evaluated exactly."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence, Union

from ._exact import CReal, compare, gcd_all, power_mean, q, root_bounds
from .core_sets import FiberedSet, IntervalUnion, LatticeSet, Polycube, sumset
from .progressions import Box, Gap, enumerate_gap, is_box_separated, is_full, is_proper

Real = Union[Fraction, CReal]


@dataclass(frozen=True)
class Inequality:
    """A checked inequality lhs >= rhs; both sides are exact rationals or certified reals."""

    name: str
    lhs: Real
    rhs: Real
    details: Mapping = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return compare(self.lhs, self.rhs) >= 0

    @property
    def tight(self) -> bool:
        return compare(self.lhs, self.rhs) == 0


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# hybrid sets in Z^d x R^k

class HybridSet:
    """A finite union of cells {z} x (c*cell + [0,c]^k) in Z^d x R^k."""

    def __init__(self, d: int, k: int, points: Iterable[tuple[Sequence[int], Sequence[int]]], scale=1):
        self.d, self.k = d, k
        self.scale = q(scale)
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        pts = set()
        for z, cell in points:
            z, cell = tuple(int(v) for v in z), tuple(int(v) for v in cell)
            if len(z) != d or len(cell) != k:
                raise ValueError("point has the wrong shape")
            pts.add((z, cell))
        self.points = frozenset(pts)

    @classmethod
    def lattice(cls, pts: Iterable[Sequence[int]]) -> "HybridSet":
        pts = [tuple(p) for p in pts]
        d = len(pts[0]) if pts else 0
        return cls(d, 0, ((p, ()) for p in pts))

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HybridSet) and (self.d, self.k, self.scale, self.points)
                == (other.d, other.k, other.scale, other.points))

    def __hash__(self) -> int:
        return hash((self.d, self.k, self.scale, self.points))

    def __repr__(self) -> str:
        return f"HybridSet(d={self.d}, k={self.k}, scale={self.scale}, {sorted(self.points)})"

    @property
    def measure(self) -> Fraction:
        return len(self.points) * self.scale ** self.k

    def _check(self, other: "HybridSet") -> None:
        if (self.d, self.k, self.scale) != (other.d, other.k, other.scale):
            raise ValueError("hybrid sets must share d, k and scale")

    def __add__(self, other: "HybridSet") -> "HybridSet":
        self._check(other)
        shifts = list(product((0, 1), repeat=self.k))
        out = set()
        for z1, c1 in self.points:
            for z2, c2 in other.points:
                z = tuple(a + b for a, b in zip(z1, z2))
                base = tuple(a + b for a, b in zip(c1, c2))
                for e in shifts:
                    out.add((z, tuple(a + b for a, b in zip(base, e))))
        return HybridSet(self.d, self.k, out, self.scale)

    def project(self, I: Iterable[int]) -> "HybridSet":
        """Delete the lattice directions in I (1-based)."""
        I = set(I)
        keep = [j for j in range(self.d) if j + 1 not in I]
        return HybridSet(len(keep), self.k, ((tuple(z[j] for j in keep), c) for z, c in self.points), self.scale)

    def add_cube(self) -> "HybridSet":
        """self + ({0,1}^d x {0}^k)."""
        out = set()
        for z, c in self.points:
            for e in product((0, 1), repeat=self.d):
                out.add((tuple(a + b for a, b in zip(z, e)), c))
        return HybridSet(self.d, self.k, out, self.scale)


def compress(A: HybridSet, i: int) -> HybridSet:
    """Replace every fibre in lattice direction i (1-based) by an initial segment 0..t-1."""
    if not 1 <= i <= A.d:
        raise ValueError(f"direction {i} outside 1..{A.d}")
    j = i - 1
    counts: dict = {}
    for z, c in A.points:
        key = (z[:j] + z[j + 1:], c)
        counts[key] = counts.get(key, 0) + 1
    out = []
    for (rest, c), t in counts.items():
        for x in range(t):
            out.append((rest[:j] + (x,) + rest[j:], c))
    return HybridSet(A.d, A.k, out, A.scale)


def compress_all(A: HybridSet) -> HybridSet:
    """C_1(...C_d(A)...)."""
    for i in range(A.d, 0, -1):
        A = compress(A, i)
    return A


def projection_terms(S: HybridSet) -> dict[tuple[int, ...], Fraction]:
    return {I: S.project(I).measure for r in range(S.d + 1) for I in combinations(range(1, S.d + 1), r)}


def projection_sum(A: HybridSet, B: HybridSet) -> Inequality:
    """Sum over I of |pi'_I(A+B)| against the (k+d)-dimensional power mean of |A|, |B|."""
    A._check(B)
    terms = projection_terms(A + B)
    lhs = sum(terms.values(), Fraction(0))
    return Inequality("projection_sum", lhs, power_mean(A.measure, B.measure, A.d + A.k),
                      {"terms": {str(I): v for I, v in terms.items()}})


def cube_bm(A: HybridSet, B: HybridSet) -> Inequality:
    """|A+B+{0,1}^d x {0}^k| against the power mean (compared after raising to the (k+d)-th power)."""
    A._check(B)
    lhs = (A + B).add_cube().measure
    return Inequality("cube_bm", lhs, power_mean(A.measure, B.measure, A.d + A.k))


# ---------------------------------------------------------------------------
# separated lifts

def _gap_plus_box(P: Gap, Q: Box) -> IntervalUnion:
    lo, hi = Q.to_interval_union().lo, Q.to_interval_union().hi
    return IntervalUnion((v + lo, v + hi) for v in enumerate_gap(P).as_numbers())


def bm_separated(P: Gap, Q: Box, Y: IntervalUnion, Z: IntervalUnion, n: int) -> Inequality:
    """|Y+Z| against the power mean minus 2^(2d+k) #P |Q| / n, for Y, Z inside P+Q (k = 1)."""
    if P.k != 1 or Q.k != 1:
        raise NotImplementedError("bm_separated is implemented for k = 1")
    if not is_full(P, n):
        raise PreconditionError(f"P is not {n}-full")
    if not is_proper(P, 2):
        raise PreconditionError("P is not 2-proper")
    if is_box_separated(P, Q, 4) is not None:
        raise PreconditionError("P is not 4Q-separated")
    PQ = _gap_plus_box(P, Q)
    for name, S in (("Y", Y), ("Z", Z)):
        if not S.issubset(PQ):
            raise PreconditionError(f"{name} is not contained in P+Q")
    d, k = P.d, 1
    slack = Fraction(2 ** (2 * d + k), n) * len(enumerate_gap(P)) * Q.volume
    rhs = power_mean(Y.measure, Z.measure, k + d) - slack
    return Inequality("bm_separated", sumset(Y, Z).measure, rhs, {"slack": slack})


# ---------------------------------------------------------------------------
# 3k-4 toolbox

def freiman3k4(A: Union[LatticeSet, IntervalUnion]) -> Inequality:
    """#(A+A) >= 2#A-1+min{#(AP hull minus A), #A-3}, or its continuous analogue."""
    if isinstance(A, LatticeSet):
        if A.dim != 1 or len(A) == 0:
            raise ValueError("need a nonempty subset of Z")
        v = A.values()
        g = gcd_all(x - v[0] for x in v) or 1
        holes = (v[-1] - v[0]) // g + 1 - len(v)
        bound = 2 * len(v) - 1 + min(holes, len(v) - 3)
        return Inequality("freiman3k4", Fraction(len(sumset(A, A))), Fraction(bound), {"holes": holes})
    if isinstance(A, IntervalUnion):
        if not A:
            raise ValueError("empty set")
        holes = A.hull().measure - A.measure
        return Inequality("freiman3k4", sumset(A, A).measure, 2 * A.measure + min(holes, A.measure),
                          {"holes": holes})
    raise TypeError("freiman3k4 takes a lattice set in Z or an interval union")


@dataclass(frozen=True)
class AdditionBounds:
    bounds: tuple[Fraction, Fraction, Fraction]
    actual: Fraction
    swapped: bool

    @property
    def holds(self) -> bool:
        return self.actual >= max(self.bounds)


def addition_bounds(X: IntervalUnion, Y: IntervalUnion) -> AdditionBounds:
    """The three elementary lower bounds for |X+Y|, with co(Y) the longer hull."""
    if not X or not Y:
        raise ValueError("empty input")
    swapped = Y.hull().measure < X.hull().measure
    if swapped:
        X, Y = Y, X
    coX, coY = X.hull().measure, Y.hull().measure
    m = min(Fraction(0), X.measure - (coY - Y.measure))
    b = (2 * X.measure, X.measure + coY + m, coX + Y.measure + m)
    return AdditionBounds(b, sumset(X, Y).measure, swapped)


# ---------------------------------------------------------------------------
# fibre compressions

def fiber_compress(B: FiberedSet) -> FiberedSet:
    """Fibres become [0, |B_i|], sorted by decreasing measure onto 1..t (stable in the index)."""
    if len(B) == 0:
        raise ValueError("empty fibred set")
    order = sorted(B.items(), key=lambda item: -item[1].measure)
    return FiberedSet({n + 1: IntervalUnion([(0, X.measure)]) for n, (_, X) in enumerate(order)})


@dataclass(frozen=True)
class BoxCompression:
    """Fibre i becomes a cube of side_cells[i] cells of size c in dimension n."""

    n: int
    precision: Fraction
    side_cells: tuple[int, ...]
    measure: Fraction
    residual: Fraction
    sumset_measure: Fraction

    def cubes(self) -> list[Polycube]:
        return [Polycube.cube(self.precision, s, self.n) for s in self.side_cells if s > 0]


def fiber_compress_box(B: FiberedSet, n: int, precision) -> BoxCompression:
    """Replace fibre i by [0, |B_i|^(1/n)]^n rounded down to the grid of size ``precision``.

    The cubes are nested at the origin, so (A'+A')_m is the largest cube sum over
    i+j = m and its measure is exact.  The residual is |B| - |A'|.
    """
    c = q(precision)
    if c <= 0 or n < 1:
        raise ValueError("need n >= 1 and positive precision")
    ms = sorted((X.measure for X in B.fibers.values()), reverse=True)
    sides = []
    for m in ms:
        lo, _ = root_bounds(m, n, 64)
        s = math.floor(lo / c)
        while ((s + 1) * c) ** n <= m:
            s += 1
        while s > 0 and (s * c) ** n > m:
            s -= 1
        sides.append(s)
    meas = sum(((s * c) ** n for s in sides), Fraction(0))
    best: dict[int, int] = {}
    for i, si in enumerate(sides, start=1):
        for j, sj in enumerate(sides, start=1):
            if si and sj:
                best[i + j] = max(best.get(i + j, 0), si + sj)
    ss = sum(((s * c) ** n for s in best.values()), Fraction(0))
    return BoxCompression(n, c, tuple(sides), meas, B.measure - meas, ss)


# ---------------------------------------------------------------------------
# analytic lemmas

def bigstep(f: Sequence, c, N) -> Inequality:
    """sum f >= N/(4c) * sum over big steps i of f(i+1)-f(i)."""
    f = [q(v) for v in f]
    c, N = q(c), q(N)
    if c <= 0 or N <= 0:
        raise PreconditionError("c and N must be positive")
    if any(v < 0 for v in f):
        raise PreconditionError("f must be non-negative")
    L = len(f) - 1
    if any(f[i + 1] - f[i] < -c for i in range(L)):
        raise PreconditionError("slope condition f(i+1)-f(i) >= -c fails")
    I = [i for i in range(L) if f[i + 1] - f[i] >= N and i <= L - N / c]
    rhs = N / (4 * c) * sum((f[i + 1] - f[i] for i in I), Fraction(0))
    return Inequality("bigstep", sum(f, Fraction(0)), rhs, {"I": I})


def secondorder(x, y, l: int) -> Inequality:
    """(1+theta)^l - 2^l >= (theta-1) l 2^(l-1) with theta = (y/x)^(1/l).

    g(theta) = (1+theta)^l - 2^l - (theta-1) l 2^(l-1) vanishes at 1 and is
    increasing for theta >= 1, so it is certified on the lower enclosure of theta.
    """
    x, y = q(x), q(y)
    if not 0 < x <= y:
        raise PreconditionError("need 0 < x <= y")
    if l < 1:
        raise PreconditionError("l must be a positive integer")

    def theta(bits):
        return root_bounds(y / x, l, bits)

    def lhs_b(bits):
        lo, hi = theta(bits)
        return (1 + lo) ** l - 2 ** l, (1 + hi) ** l - 2 ** l

    def rhs_b(bits):
        lo, hi = theta(bits)
        return (lo - 1) * l * 2 ** (l - 1), (hi - 1) * l * 2 ** (l - 1)

    lo, hi = theta(8)
    if lo == hi:
        lhs, rhs = CReal(lhs_b(8)[0]), CReal(rhs_b(8)[0])
    else:
        lhs, rhs = CReal(bounds=lhs_b), CReal(bounds=rhs_b)
    # certificate: g at the lower enclosure, clamped to the monotone range
    t = max(Fraction(1), theta(64)[0])
    g = (1 + t) ** l - 2 ** l - (t - 1) * l * 2 ** (l - 1)
    pm = power_mean(x, y, l)
    return Inequality("secondorder", lhs, rhs, {"certificate": g, "certified": g >= 0,
                                                "power_mean_ge_2^l_x": compare(pm, 2 ** l * x) >= 0})


def secondorder_certified(x, y, l: int) -> bool:
    """The monotonicity certificate alone (no enclosure comparison)."""
    ineq = secondorder(x, y, l)
    return bool(ineq.details["certified"]) and bool(ineq.details["power_mean_ge_2^l_x"])
