"""Part covers, Freiman homomorphic labellings of parts, quotient measures and max-convolution."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Optional, Sequence, Union

from ._exact import BudgetExceeded, CReal, cmax, gcd_all, nullspace, power_mean, q
from .core_sets import IntervalUnion, Polycube
from .geometry import convex_hull_2d, minkowski_2d, point_in_polygon, polygon_area, polygons_overlap

DEFAULT_BUDGET = 2 * 10 ** 6


# ---------------------------------------------------------------------------
# convex parts: closed intervals (k = 1) or convex polygons (k = 2)

@dataclass(frozen=True)
class Part:
    """A convex piece: ``(lo, hi)`` for k = 1, or a counter-clockwise vertex tuple for k = 2."""

    k: int
    shape: tuple

    @classmethod
    def interval(cls, lo, hi) -> "Part":
        return cls(1, (q(lo), q(hi)))

    @classmethod
    def polygon(cls, pts) -> "Part":
        return cls(2, tuple(convex_hull_2d(pts)))

    @property
    def volume(self) -> Fraction:
        if self.k == 1:
            return self.shape[1] - self.shape[0]
        return polygon_area(self.shape)

    @property
    def anchor(self) -> tuple:
        """Leftmost point, used for ordering."""
        return (self.shape[0],) if self.k == 1 else min(self.shape)

    def __add__(self, other: "Part") -> "Part":
        if self.k == 1:
            return Part(1, (self.shape[0] + other.shape[0], self.shape[1] + other.shape[1]))
        return Part(2, tuple(minkowski_2d(self.shape, other.shape)))

    def hull_with(self, other: "Part") -> "Part":
        if self.k == 1:
            return Part(1, (min(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1])))
        return Part.polygon(self.shape + other.shape)

    def overlaps(self, other: "Part") -> bool:
        """Intersection of positive measure."""
        if self.k == 1:
            return max(self.shape[0], other.shape[0]) < min(self.shape[1], other.shape[1])
        return polygons_overlap(self.shape, other.shape)

    def meets(self, other: "Part") -> bool:
        """Positive overlap, or a lower-dimensional piece lying inside the other."""
        if self.overlaps(other):
            return True
        if self.k == 1:
            a, b = self.shape
            c, d = other.shape
            return (a == b and c < a < d) or (c == d and a < c < b) or (a == b == c == d)
        small, big = (self, other) if len(self.shape) < 3 else (other, self)
        if len(small.shape) >= 3:
            return False
        return any(point_in_polygon(v, big.shape) for v in small.shape) and len(big.shape) >= 3

    def render(self) -> list:
        return [str(v) for v in self.shape] if self.k == 1 else [[str(x), str(y)] for x, y in self.shape]


def _components(A) -> list[tuple[Part, Fraction]]:
    """Connected components of A as (convex hull, measure of A inside)."""
    if isinstance(A, Polycube) and A.dim == 1:
        A = A.to_interval_union()
    if isinstance(A, IntervalUnion):
        return [(Part.interval(a, b), b - a) for a, b in A.intervals]
    if isinstance(A, Polycube) and A.dim == 2:
        boxes = list(A.boxes)
        parent = list(range(len(boxes)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in combinations(range(len(boxes)), 2):
            (l1, h1), (l2, h2) = boxes[i], boxes[j]
            if all(l1[t] <= h2[t] + 1 and l2[t] <= h1[t] + 1 for t in range(2)):
                parent[find(i)] = find(j)
        groups: dict[int, list] = {}
        for i in range(len(boxes)):
            groups.setdefault(find(i), []).append(boxes[i])
        c = A.scale
        out = []
        for bx in groups.values():
            corners = [(c * x, c * y) for lo, hi in bx for x in (lo[0], hi[0] + 1) for y in (lo[1], hi[1] + 1)]
            out.append((Part.polygon(corners), Polycube(c, bx, 2).measure))
        return out
    raise TypeError("parts are built for interval unions and planar polycubes")


# ---------------------------------------------------------------------------
# homomorphism check

@dataclass(frozen=True)
class HomCheck:
    ok: bool
    witness: Optional[tuple] = None  # two s-multisets of part indices

    def __bool__(self) -> bool:
        return self.ok


def _overlapping_multisets(parts: Sequence[Part], s: int, budget: int):
    """Pairs of distinct s-multisets of parts whose part sums overlap in positive measure."""
    ms = list(combinations_with_replacement(range(len(parts)), s))
    if len(ms) ** 2 > budget:
        raise BudgetExceeded(f"{len(ms)} multisets of size {s} exceed the pair budget")
    sums = []
    for m in ms:
        S = parts[m[0]]
        for i in m[1:]:
            S = S + parts[i]
        sums.append(S)
    if parts and parts[0].k == 1:
        # sweep by left end
        order = sorted(range(len(ms)), key=lambda i: sums[i].shape[0])
        for a_pos, a in enumerate(order):
            for b in order[a_pos + 1:]:
                if sums[b].shape[0] >= sums[a].shape[1]:
                    break
                if sums[a].overlaps(sums[b]):
                    yield tuple(sorted((ms[a], ms[b])))
        return
    for a, b in combinations(range(len(ms)), 2):
        if sums[a].overlaps(sums[b]):
            yield (ms[a], ms[b])


def verify_hom(parts: Sequence[Part], labels: Sequence[int], s: int, A=None,
               budget: int = DEFAULT_BUDGET) -> HomCheck:
    """True iff every positive-measure overlap of s-fold part sums has equal label sums.

    When A is given, the parts must also cover it.
    """
    if len(labels) != len(parts):
        raise ValueError("one label per part")
    if A is not None:
        comps = _components(A)
        for comp, _ in comps:
            if not any(_covers(p, comp) for p in parts):
                return HomCheck(False, ("uncovered", comp.render()))
    for m1, m2 in _overlapping_multisets(parts, s, budget):
        if sum(labels[i] for i in m1) != sum(labels[i] for i in m2):
            return HomCheck(False, (m1, m2))
    return HomCheck(True)


def _covers(big: Part, small: Part) -> bool:
    if big.k == 1:
        return big.shape[0] <= small.shape[0] and small.shape[1] <= big.shape[1]
    return all(point_in_polygon(v, big.shape) for v in small.shape)


# ---------------------------------------------------------------------------
# merging

@dataclass(frozen=True)
class Quotient:
    mu: dict  # label -> measure

    @property
    def support(self) -> list[int]:
        return sorted(self.mu)

    @property
    def total(self) -> Fraction:
        return sum(self.mu.values(), Fraction(0))


@dataclass(frozen=True)
class CocoResult:
    parts: tuple[Part, ...]
    labels: tuple[int, ...]
    quotient: Quotient
    upper_bound: Fraction
    merges: int
    history: tuple[tuple[int, Fraction], ...]  # (part count, hull volume) after each step


def _normalise_labels(f: Sequence[Fraction], parts: Sequence[Part]) -> tuple[int, ...]:
    den = math.lcm(*(x.denominator for x in f)) if f else 1
    ints = [int(x * den) for x in f]
    lo = min(ints)
    ints = [x - lo for x in ints]
    g = gcd_all(ints) or 1
    ints = [x // g for x in ints]
    first = min(range(len(parts)), key=lambda i: parts[i].anchor)
    last = max(range(len(parts)), key=lambda i: parts[i].anchor)
    if ints[first] > ints[last]:
        top = max(ints)
        ints = [top - x for x in ints]
    return tuple(ints)


def _solve_labels(parts: Sequence[Part], s: int, budget: int):
    """Either ('labels', f) with f injective and homomorphic, or ('forced', pairs)."""
    n = len(parts)
    if n == 1:
        return "labels", (0,)
    eqs = []
    for m1, m2 in _overlapping_multisets(parts, s, budget):
        row = [0] * n
        for i in m1:
            row[i] += 1
        for i in m2:
            row[i] -= 1
        if any(row):
            eqs.append(row)
    # parts in positional order on a common progression: rank labels
    order = sorted(range(n), key=lambda i: parts[i].anchor)
    rank = [0] * n
    for r, i in enumerate(order):
        rank[i] = r
    if all(sum(c * rank[i] for i, c in enumerate(row)) == 0 for row in eqs):
        return "labels", tuple(rank)
    basis = nullspace(eqs, n) if eqs else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    forced = [(i, j) for i, j in combinations(range(n), 2) if all(v[i] == v[j] for v in basis)]
    if forced:
        return "forced", forced
    base = 2
    while True:
        f = [sum((Fraction(base) ** t * v[i] for t, v in enumerate(basis)), Fraction(0)) for i in range(n)]
        if len(set(f)) == n:
            return "labels", _normalise_labels(f, parts)
        base += 1


def _absorb(parts: list[Part], weights: list[Fraction], i: int) -> int:
    """Merge into part i every part it meets; returns the new index of the merged part."""
    changed = True
    while changed:
        changed = False
        for j in range(len(parts)):
            if j != i and parts[i].meets(parts[j]):
                parts[i] = parts[i].hull_with(parts[j])
                weights[i] += weights[j]
                del parts[j], weights[j]
                if j < i:
                    i -= 1
                changed = True
                break
    return i


def coco_upper(A: Union[IntervalUnion, Polycube], s: int = 2, budget: int = DEFAULT_BUDGET) -> CocoResult:
    """Greedy merging of convex components into a part cover with a Freiman s-homomorphic labelling.

    The overlap equations of s-fold part sums cut out the space of homomorphic
    labellings.  When every labelling identifies some pair of parts, that pair must
    share a part; the forced pair with the smallest joint hull is merged.  The total
    hull volume is an upper bound for the optimal cover.
    """
    if s < 1:
        raise ValueError("s must be positive")
    comps = _components(A)
    if not comps:
        raise ValueError("empty set")
    parts = [p for p, _ in comps]
    weights = [m for _, m in comps]
    # hulls of touching components may overlap; start from disjoint pieces
    i = 0
    while i < len(parts):
        i = _absorb(parts, weights, i) + 1
    history = [(len(parts), sum((p.volume for p in parts), Fraction(0)))]
    merges = 0
    while True:
        kind, data = _solve_labels(parts, s, budget)
        if kind == "labels":
            labels = data
            break
        i, j = min(data, key=lambda ij: (parts[ij[0]].hull_with(parts[ij[1]]).volume,
                                         min(parts[ij[0]].anchor, parts[ij[1]].anchor)))
        parts[i] = parts[i].hull_with(parts[j])
        weights[i] += weights[j]
        del parts[j], weights[j]
        _absorb(parts, weights, i if j > i else i - 1)
        merges += 1
        history.append((len(parts), sum((p.volume for p in parts), Fraction(0))))
    mu: dict[int, Fraction] = {}
    for lab, w in zip(labels, weights):
        mu[lab] = mu.get(lab, Fraction(0)) + w
    return CocoResult(tuple(parts), tuple(labels), Quotient(mu), history[-1][1], merges, tuple(history))


# ---------------------------------------------------------------------------
# max-convolution

@dataclass(frozen=True)
class MaxConv:
    values: dict  # i -> CReal
    total: CReal


def maxconv(mu: Union[Quotient, dict], k: int) -> MaxConv:
    """(mu *_k mu)(i) = max over x+y=i of the k-power mean of mu(x), mu(y), and its sum over i."""
    if k < 1:
        raise ValueError("k must be positive")
    m = mu.mu if isinstance(mu, Quotient) else {int(a): q(b) for a, b in mu.items()}
    cands: dict[int, list] = {}
    for x, y in product(m, repeat=2):
        if x > y:
            continue
        cands.setdefault(x + y, []).append(power_mean(m[x], m[y], k))
    values = {i: cmax(c) for i, c in sorted(cands.items())}
    total = CReal(0)
    for v in values.values():
        total = total + v
    return MaxConv(values, total)
