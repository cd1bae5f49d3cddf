"""Generalised arithmetic progressions, convex progressions and parallelotopes.

A d-GAP ``P(a; l)`` is the set of ``base + sum(lam_i * a_i)`` with ``1 <= lam_i <= l_i``.
A convex progression is ``phi(C ∩ Z^d)`` for a rational H-polytope C and a
rational linear map phi given as a k x d matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from ._exact import BudgetExceeded, det, q, rank, solve, vadd, vec, vsub
from .core_sets import IntervalUnion, LatticeSet
from .geometry import DEFAULT_BUDGET, HPolytope
from .lp import feasible_point

Vec = tuple[Fraction, ...]


def _vectors(vs, k: Optional[int] = None) -> tuple[Vec, ...]:
    out = tuple(vec(v) for v in vs)
    if k is not None and any(len(v) != k for v in out):
        raise ValueError(f"expected {k}-vectors")
    return out


# ---------------------------------------------------------------------------
# parallelotopes and zonotopes

@dataclass(frozen=True)
class Box:
    """The zonotope {center + sum(beta_j g_j) : |beta_j| <= 1}.

    With k generators in R^k this is a parallelotope; fewer generators give a
    degenerate box and more give a general zonotope (used for merged bodies).
    """

    center: Vec
    generators: tuple[Vec, ...]

    def __init__(self, center, generators: Iterable = ()):
        c = vec(center)
        gens = _vectors(generators, len(c))
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def interval(cls, lo, hi) -> "Box":
        lo, hi = q(lo), q(hi)
        return cls(((lo + hi) / 2,), [((hi - lo) / 2,)])

    @classmethod
    def symmetric_interval(cls, r) -> "Box":
        return cls((0,), [(q(r),)])

    @property
    def k(self) -> int:
        return len(self.center)

    def is_symmetric(self) -> bool:
        return all(c == 0 for c in self.center)

    def shape(self) -> "Box":
        """The same body recentred at the origin."""
        return Box((0,) * self.k, self.generators)

    def dilate(self, t) -> "Box":
        t = q(t)
        return Box(tuple(t * c for c in self.center), [tuple(t * x for x in g) for g in self.generators])

    def translate(self, v) -> "Box":
        return Box(vadd(self.center, vec(v)), self.generators)

    def add_generator(self, g) -> "Box":
        return Box(self.center, self.generators + (vec(g),))

    def coefficients(self, x) -> Optional[tuple[Fraction, ...]]:
        """Some beta with |beta_j| <= 1 and x = center + G beta, or None."""
        x = vsub(vec(x), self.center)
        r = len(self.generators)
        if r == 0:
            return () if all(c == 0 for c in x) else None
        cols = [[g[i] for g in self.generators] for i in range(self.k)]
        if rank(cols) == r:
            beta = solve(cols, x)
            if beta is None or any(abs(b) > 1 for b in beta):
                return None
            return tuple(beta)
        A_ub = []
        b_ub = []
        for j in range(r):
            e = [0] * r
            e[j] = 1
            A_ub.append(e)
            b_ub.append(1)
            A_ub.append([-v for v in e])
            b_ub.append(1)
        return feasible_point(A_ub, b_ub, cols, list(x), n=r)

    def contains(self, x) -> bool:
        return self.coefficients(x) is not None

    def vertices(self) -> list[Vec]:
        out = set()
        for signs in product((-1, 1), repeat=len(self.generators)):
            v = self.center
            for s, g in zip(signs, self.generators):
                v = vadd(v, tuple(s * x for x in g))
            out.add(v)
        return sorted(out)

    @property
    def volume(self) -> Fraction:
        """k-dimensional volume: sum over k-subsets of generators of |det(2 g_S)|."""
        k = self.k
        total = Fraction(0)
        for S in combinations(self.generators, k):
            total += abs(det([[2 * g[i] for g in S] for i in range(k)]))
        return total

    def to_interval_union(self) -> IntervalUnion:
        if self.k != 1:
            raise ValueError("only 1-dimensional boxes are intervals")
        r = sum((abs(g[0]) for g in self.generators), Fraction(0))
        return IntervalUnion([(self.center[0] - r, self.center[0] + r)])


Zonotope = Box


# ---------------------------------------------------------------------------
# GAPs

@dataclass(frozen=True)
class GapValues:
    points: tuple[Vec, ...]
    collisions: int

    def __len__(self) -> int:
        return len(self.points)

    def as_lattice(self) -> LatticeSet:
        return LatticeSet(self.points, dim=len(self.points[0]))

    def as_numbers(self) -> list[Fraction]:
        return [p[0] for p in self.points]


@dataclass(frozen=True)
class Gap:
    """The d-GAP base + {sum lam_i a_i : 1 <= lam_i <= l_i} in Q^k."""

    base: Vec
    steps: tuple[Vec, ...]
    lengths: tuple[int, ...]

    def __init__(self, base, steps: Iterable = (), lengths: Iterable[int] = ()):
        b = vec(base)
        st = _vectors(steps, len(b))
        ls = tuple(int(x) for x in lengths)
        if len(st) != len(ls):
            raise ValueError("steps and lengths differ in number")
        if any(x < 1 for x in ls):
            raise ValueError("lengths must be positive")
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "steps", st)
        object.__setattr__(self, "lengths", ls)

    @property
    def d(self) -> int:
        return len(self.steps)

    @property
    def k(self) -> int:
        return len(self.base)

    @property
    def index_count(self) -> int:
        return math.prod(self.lengths)

    def linear(self, lam: Sequence[int]) -> Vec:
        """sum lam_i a_i (no base)."""
        out = (Fraction(0),) * self.k
        for l, a in zip(lam, self.steps):
            out = tuple(o + l * x for o, x in zip(out, a))
        return out

    def value(self, lam: Sequence[int]) -> Vec:
        return vadd(self.base, self.linear(lam))

    def indices(self, s: int = 1) -> Iterable[tuple[int, ...]]:
        """Lattice points of the dilate sC with C = prod [1, l_i]."""
        return product(*(range(s, s * l + 1) for l in self.lengths))

    def translate(self, v) -> "Gap":
        return Gap(vadd(self.base, vec(v)), self.steps, self.lengths)

    def as_convex(self) -> "ConvexProgression":
        """The convex progression phi(prod[1, l_i] ∩ Z^d), i.e. this GAP minus its base."""
        C = HPolytope.box([1] * self.d, list(self.lengths)) if self.d else HPolytope((), 0)
        phi = tuple(tuple(a[i] for a in self.steps) for i in range(self.k))
        return ConvexProgression(C, phi)


def enumerate_gap(P: Gap, budget: int = DEFAULT_BUDGET) -> GapValues:
    """Distinct values of P and the number of index collisions."""
    n = P.index_count
    if n > budget:
        raise BudgetExceeded(f"GAP has {n} index tuples, budget {budget}")
    vals = {P.value(lam) for lam in P.indices()}
    return GapValues(tuple(sorted(vals)), n - len(vals))


# ---------------------------------------------------------------------------
# convex progressions

@dataclass(frozen=True)
class ConvexProgression:
    """phi(C ∩ Z^d) with phi a k x d rational matrix (rows are output coordinates)."""

    C: HPolytope
    phi: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __init__(self, C: HPolytope, phi: Iterable[Sequence], symmetric: bool = False):
        ph = tuple(tuple(q(x) for x in row) for row in phi)
        if any(len(r) != C.dim for r in ph):
            raise ValueError("phi must have one column per lattice dimension")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "phi", ph)
        object.__setattr__(self, "symmetric", bool(symmetric))
        if C.dim and not C.is_bounded():
            raise ValueError("C must be bounded")
        if symmetric and C.dim and not C.is_symmetric():
            raise ValueError("C is flagged symmetric but C != -C")

    @property
    def d(self) -> int:
        return self.C.dim

    @property
    def k(self) -> int:
        return len(self.phi)

    def apply(self, z: Sequence) -> Vec:
        return tuple(sum((a * x for a, x in zip(row, z)), Fraction(0)) for row in self.phi)

    def lattice_points(self, s: int = 1, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
        C = self.C.scale(s) if s != 1 else self.C
        return C.lattice_points(budget)

    def values(self, s: int = 1, budget: int = DEFAULT_BUDGET) -> list[Vec]:
        return sorted({self.apply(z) for z in self.lattice_points(s, budget)})

    def size(self, budget: int = DEFAULT_BUDGET) -> int:
        return len(self.values(1, budget))


def is_proper(P, s: int = 1, budget: int = DEFAULT_BUDGET) -> bool:
    """phi is injective on sC ∩ Z^d."""
    if s < 1:
        raise ValueError("s must be positive")
    if isinstance(P, Gap):
        if P.d == 0:
            return True
        n = math.prod(s * l - s + 1 for l in P.lengths)
        if n > budget:
            raise BudgetExceeded(f"{n} lattice points exceed budget {budget}")
        seen = set()
        for lam in P.indices(s):
            v = P.linear(lam)
            if v in seen:
                return False
            seen.add(v)
        return True
    if P.d == 0:
        return True
    pts = P.lattice_points(s, budget)
    return len({P.apply(z) for z in pts}) == len(pts)


def is_full(P, n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Every coordinate direction has a lattice fibre of C with at least n points."""
    if isinstance(P, Gap):
        return all(l >= n for l in P.lengths)
    if P.d == 0:
        return True
    pts = P.lattice_points(1, budget)
    for i in range(P.d):
        counts: dict = {}
        for z in pts:
            key = z[:i] + z[i + 1:]
            counts[key] = counts.get(key, 0) + 1
        if not counts or max(counts.values()) < n:
            return False
    return True


def gauss_count(C, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """#(nC ∩ Z^d)."""
    if isinstance(C, ConvexProgression):
        C = C.C
    return len(C.scale(n).lattice_points(budget))


# ---------------------------------------------------------------------------
# separated lifts

class LiftError(ValueError):
    """Raised when the lift preconditions fail; ``reason`` names the failure."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


@dataclass(frozen=True)
class Lifted:
    lam: tuple[int, ...]
    q: Vec

    def as_vector(self) -> tuple:
        return tuple(Fraction(x) for x in self.lam) + self.q


def is_box_separated(P: Gap, Q: Box, factor: int = 4, budget: int = DEFAULT_BUDGET) -> Optional[tuple]:
    """None if distinct values of P differ outside factor*(Q - center); otherwise a violating pair."""
    body = Q.shape().dilate(factor)
    vals = enumerate_gap(P, budget).points
    for a, b in combinations(vals, 2):
        if body.contains(vsub(b, a)):
            return (a, b)
    return None


def lift(P: Gap, Q: Box, pts: Iterable, budget: int = DEFAULT_BUDGET) -> list[Lifted]:
    """The map p + q -> (lambda, q) for a 2-proper, 4Q-separated GAP P.

    Each point must decompose as p + q with p in P and q in Q; the decomposition
    is unique under the separation hypothesis.  The base of P is absorbed into p.
    """
    if P.k != Q.k:
        raise ValueError("P and Q live in different dimensions")
    if not is_proper(P, 2, budget):
        raise LiftError("not_proper", "P is not 2-proper")
    bad = is_box_separated(P, Q, 4, budget)
    if bad is not None:
        raise LiftError("not_separated", f"{bad[0]} and {bad[1]} differ by an element of 4Q")
    table = [(lam, P.value(lam)) for lam in P.indices()]
    out = []
    for x in pts:
        x = vec(x)
        hit = None
        for lam, p in table:
            r = vsub(x, p)
            if Q.contains(r):
                hit = Lifted(lam, r)
                break
        if hit is None:
            raise LiftError("not_in_P_plus_Q", f"{x} is not in P+Q")
        out.append(hit)
    return out


def freiman_violation(xs: Sequence, ys: Sequence, s: int = 2) -> Optional[tuple]:
    """None if x -> y preserves and reflects all s-fold additive coincidences.

    Compares the partitions of index multisets by their sums in domain and image.
    Returns a pair of index multisets on which the two sides disagree otherwise.
    """
    from itertools import combinations_with_replacement

    xs = [vec(x) for x in xs]
    ys = [vec(y) for y in ys]
    by_x: dict = {}
    by_y: dict = {}
    for M in combinations_with_replacement(range(len(xs)), s):
        sx = tuple(sum(c) for c in zip(*(xs[i] for i in M)))
        sy = tuple(sum(c) for c in zip(*(ys[i] for i in M)))
        by_x.setdefault(sx, []).append(M)
        by_y.setdefault(sy, []).append(M)
    cls_x = {M: key for key, Ms in by_x.items() for M in Ms}
    cls_y = {M: key for key, Ms in by_y.items() for M in Ms}
    for Ms in list(by_x.values()) + list(by_y.values()):
        for M in Ms[1:]:
            if cls_x[M] != cls_x[Ms[0]] or cls_y[M] != cls_y[Ms[0]]:
                return (Ms[0], M)
    return None
