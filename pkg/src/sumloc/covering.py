"""Minimal covers: interval covers, GAP covers in Z, AP-of-intervals covers and fibre hulls."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Union

from ._exact import BudgetExceeded, gcd_all
from .core_sets import FiberedSet, IntervalUnion, LatticeSet, sumset
from .lp import linprog
from .progressions import Box, Gap

INF = math.inf
Size = Union[Fraction, float]


# ---------------------------------------------------------------------------
# interval covers

def co_t_1d(A: IntervalUnion, t: int) -> IntervalUnion:
    """Smallest union of at most t intervals containing A: drop the t-1 largest gaps."""
    if not A:
        raise ValueError("cover of an empty set")
    if t < 1:
        raise ValueError("t must be positive")
    gaps = A.gaps()
    # largest gaps first; leftmost wins ties
    order = sorted(range(len(gaps)), key=lambda i: (-(gaps[i][1] - gaps[i][0]), i))
    cut = sorted(order[:t - 1])
    pieces = []
    start = A.lo
    for i in cut:
        pieces.append((start, gaps[i][0]))
        start = gaps[i][1]
    pieces.append((start, A.hi))
    return IntervalUnion(pieces)


# ---------------------------------------------------------------------------
# GAP covers in Z

@dataclass(frozen=True)
class CoverResult:
    """X + P (+ Q) containing A; size is the cardinality (or measure) of the cover."""

    X: tuple
    P: Optional[Gap]
    Q: Optional[Box]
    size: Size
    optimal: bool
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.size != INF

    def cover_set(self) -> LatticeSet:
        vals = [int(v[0]) for v in _gap_values(self.P)]
        return LatticeSet({x + v for x in self.X for v in vals}, dim=1)


def _gap_values(P: Gap) -> list:
    from .progressions import enumerate_gap
    return list(enumerate_gap(P).points)


@dataclass(frozen=True)
class _Shape:
    key: tuple           # (steps, lengths) lexicographically smallest generator
    values: tuple[int, ...]
    mask: int

    @property
    def size(self) -> int:
        return len(self.values)


def _length_window(d: int, diam: int, symmetric: bool = False) -> list[tuple[int, ...]]:
    """Length vectors with l_i <= cap and prod l_i <= cap, where cap = diam+1.

    The product cap is free: for d >= 1 the interval [min A, max A] is itself a
    cover of size diam+1, so no optimal P is larger.  Symmetric progressions have
    odd length, so there the covering interval may need diam+2 points.
    """
    cap = diam + 1 + (symmetric and diam % 2 == 1)
    out = []
    for ls in product(range(1, cap + 1), repeat=d):
        if math.prod(ls) <= cap:
            out.append(ls)
    return out


@lru_cache(maxsize=64)
def _shapes(d: int, diam: int, symmetric: bool = False) -> tuple[_Shape, ...]:
    """Distinct value sets (normalised to min 0) of proper d-GAPs in the search window.

    Window: steps 1..max(diam, 1), lengths as in ``_length_window``; a degenerate
    direction (l_i = 1) uses step 1.  With ``symmetric`` only odd lengths are allowed,
    which is exactly when the progression is a translate of a set with P = -P.
    """
    top = max(diam, 1)
    found: dict[frozenset, tuple] = {}
    for lengths in _length_window(d, diam, symmetric):
        if symmetric and any(l % 2 == 0 for l in lengths):
            continue
        step_ranges = [range(1, 2) if l == 1 else range(1, top + 1) for l in lengths]
        for steps in product(*step_ranges):
            vals = {sum(lam * a for lam, a in zip(lams, steps)) for lams in product(*(range(l) for l in lengths))}
            if len(vals) != math.prod(lengths):
                continue  # not proper
            key = (steps, lengths)
            fs = frozenset(vals)
            if fs not in found or key < found[fs]:
                found[fs] = key
    out = []
    for fs, key in found.items():
        vals = tuple(sorted(fs))
        mask = 0
        for v in vals:
            mask |= 1 << v
        out.append(_Shape(key, vals, mask))
    return tuple(out)


def _shape_gap(shape: _Shape) -> Gap:
    steps, lengths = shape.key
    base = -sum(steps)
    return Gap((base,), [(a,) for a in steps], lengths)


def gap_cover(A: LatticeSet, d: int, t: int, budget: int = 10 ** 7,
              limit: Optional[int] = None, symmetric: bool = False) -> CoverResult:
    """Minimum #(X+P) over proper d-GAPs P and #X <= t with A ⊆ X+P.

    Branch and bound: shapes are tried in order of size, translates are chosen to
    cover the smallest uncovered element, and partial covers are pruned once they
    reach the incumbent.  Among optimal covers the lexicographically smallest
    (steps, lengths, X) is returned.  ``limit`` restricts the search to covers of
    size at most ``limit``; infeasible searches report size +inf.
    """
    if A.dim != 1:
        raise ValueError("GAP covers are implemented for subsets of Z")
    if len(A) == 0:
        raise ValueError("cover of an empty set")
    if d < 0 or t < 1:
        raise ValueError("need d >= 0 and t >= 1")
    vals = A.values()
    lo = vals[0]
    diam = vals[-1] - lo
    norm = [v - lo for v in vals]
    shapes = _shapes(d, diam, symmetric)
    off = max(sh.values[-1] for sh in shapes)  # bit position of translate 0
    amask_bits = [1 << (v + off) for v in norm]
    n = len(norm)
    nodes = 0
    best = INF if limit is None else limit + 1
    exhausted = False

    def search(shape: _Shape, strict: bool, found: list) -> None:
        # strict: prune at >= best (improvement); else prune at > best (enumerate ties)
        S = shape.values
        smask = shape.mask

        def rec(covered: int, union: int, chosen: tuple) -> None:
            nonlocal nodes, best, exhausted
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            first = next((i for i in range(n) if not covered >> i & 1), None)
            if first is None:
                size = union.bit_count()
                if (size < best) if strict else (size <= best):
                    if strict:
                        best = size
                        found.clear()
                    found.append((size, tuple(sorted(chosen))))
                return
            if len(chosen) == t:
                return
            a = norm[first]
            for s in S:
                x = a - s
                shifted = smask << (x + off)
                new_union = union | shifted
                size = new_union.bit_count()
                if (size >= best) if strict else (size > best):
                    continue
                new_cov = covered
                for i in range(first, n):
                    if shifted & amask_bits[i]:
                        new_cov |= 1 << i
                rec(new_cov, new_union, chosen + (x,))
                if exhausted:
                    return

        rec(0, 0, ())

    # pass 1: optimal value
    incumbent = None
    for shape in sorted(shapes, key=lambda s: (s.size, s.key)):
        if shape.size >= best:
            break
        found: list = []
        search(shape, True, found)
        if found:
            incumbent = shape
        if exhausted:
            break
    if exhausted:
        if incumbent is None:
            return CoverResult((), None, None, INF, False, nodes)
        found = []
        search(incumbent, False, found)
        X = min(x for s, x in found if s == best) if found else ()
        return CoverResult(tuple(x + lo for x in X), _shape_gap(incumbent), None, Fraction(best), False, nodes)
    if incumbent is None:
        return CoverResult((), None, None, INF, True, nodes)

    # pass 2: deterministic tie-break over all shapes reaching the optimum
    winner = None
    for shape in sorted(shapes, key=lambda s: s.key):
        if shape.size > best:
            continue
        found = []
        search(shape, False, found)
        ties = [x for s, x in found if s == best]
        if ties:
            winner = (shape, min(ties))
            break
    shape, X = winner
    return CoverResult(tuple(x + lo for x in X), _shape_gap(shape), None, Fraction(best), True, nodes)


# ---------------------------------------------------------------------------
# exhaustive oracle (independent of the branch and bound above)

def _set_partitions(n: int, max_blocks: int):
    """All partitions of range(n) into at most max_blocks blocks (restricted growth strings)."""
    def rec(i: int, blocks: list):
        if i == n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < max_blocks:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()
    if n == 0:
        yield []
        return
    yield from rec(0, [])


def gap_cover_exhaustive(A: LatticeSet, d: int, t: int) -> Size:
    """Minimum #(X+P) by brute force: every proper GAP in the window, every partition of A.

    Each block of a partition must fit in one translate x+P; the translates of a
    block are the common solutions x = a - p, and every combination is tried.
    """
    vals = A.values()
    diam = vals[-1] - vals[0]
    top = max(diam, 1)
    shapes = set()
    for lengths in product(range(1, diam + 2), repeat=d):
        if math.prod(lengths) > diam + 1:
            continue
        for steps in product(range(1, top + 1), repeat=d):
            pts = [sum(lam * a for lam, a in zip(lams, steps))
                   for lams in product(*(range(1, l + 1) for l in lengths))]
            if len(set(pts)) == len(pts):
                shapes.add(frozenset(pts))
    best: Size = INF
    parts = list(_set_partitions(len(vals), t))
    for S in sorted(shapes, key=len):
        if len(S) >= best:
            break  # every cover using S has at least #S elements
        for blocks in parts:
            options = []
            for blk in blocks:
                xs = None
                for i in blk:
                    cand = {vals[i] - p for p in S}
                    xs = cand if xs is None else xs & cand
                if not xs:
                    break
                options.append(sorted(xs))
            else:
                for X in product(*options):
                    size = len({x + p for x in X for p in S})
                    if size < best:
                        best = size
    return best if best == INF else Fraction(best)


def nondeg_check(A: LatticeSet, d: int, t: int, budget: int = 10 ** 7) -> bool:
    """(d, t)-non-degeneracy: no (d-1)-GAP cover by t translates of size below t#A."""
    if d < 1:
        raise ValueError("d must be positive")
    res = gap_cover(A, d - 1, t, budget=budget, limit=t * len(A) - 1)
    if not res.optimal:
        raise BudgetExceeded("non-degeneracy search exceeded its budget")
    return res.size == INF or res.size >= t * len(A)


@dataclass(frozen=True)
class CoverChain:
    co: Size
    sco: Size
    gap: Size


def cover_chain(A: LatticeSet, d: int, t: int) -> CoverChain:
    """co_t, sco_t and gap_t in Z for d <= 1.

    For d <= 1 convex progressions in Z are exactly arithmetic progressions, so
    co equals the GAP value; symmetric progressions contain 0 and have odd length.
    """
    if d > 1:
        raise ValueError("the chain is computed for d <= 1")
    g = gap_cover(A, d, t).size
    s = gap_cover(A, d, t, symmetric=True).size
    # convex 1-progressions phi(C ∩ Z) are the APs, so co coincides with gap here
    return CoverChain(g, s, g)


# ---------------------------------------------------------------------------
# fibred hulls

def _normalise_indices(B: FiberedSet) -> tuple[int, int]:
    idx = B.indices
    lo = idx[0]
    g = gcd_all(i - lo for i in idx) or 1
    return lo, g


def _upper_hull(pts: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    pts = sorted(pts)
    hull: list = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _eval_chain(chain: list, x) -> Fraction:
    for (x1, y1), (x2, y2) in zip(chain, chain[1:]):
        if x1 <= x <= x2:
            return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
    if len(chain) == 1 and chain[0][0] == x:
        return chain[0][1]
    raise ValueError("point outside the hull")


@dataclass(frozen=True)
class Co11Result:
    hull: FiberedSet
    excess: Fraction


def co11(B: FiberedSet) -> Co11Result:
    """Intersect the planar convex hull of B (fibres as vertical lines) with every fibre line.

    Fibre indices are first normalised to consecutive integers (shift and divide by
    their gcd); the result is reported on the original indices.
    """
    if len(B) == 0:
        raise ValueError("hull of an empty fibred set")
    lo, g = _normalise_indices(B)
    tops = [(Fraction((i - lo) // g), X.hi) for i, X in B.items()]
    bots = [(Fraction((i - lo) // g), -X.lo) for i, X in B.items()]
    upper = _upper_hull(tops)
    lower = _upper_hull(bots)
    last = (B.indices[-1] - lo) // g
    fibers = {}
    for j in range(last + 1):
        top = _eval_chain(upper, j)
        bot = -_eval_chain(lower, j)
        fibers[lo + g * j] = IntervalUnion([(bot, top)])
    H = FiberedSet(fibers)
    return Co11Result(H, H.measure - B.measure)


# ---------------------------------------------------------------------------
# AP of intervals

@dataclass(frozen=True)
class ApCover:
    base: Fraction
    step: Fraction
    first_length: Fraction
    length_step: Fraction
    count: int

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        out = []
        for i in range(self.count):
            s = self.base + i * self.step
            out.append((s, s + self.first_length + i * self.length_step))
        return out

    @property
    def total_length(self) -> Fraction:
        t = self.count
        return t * self.first_length + self.length_step * t * (t - 1) / 2

    def as_fibered(self, first_index: int = 0) -> FiberedSet:
        return FiberedSet({first_index + i: IntervalUnion([iv]) for i, iv in enumerate(self.intervals())})

    def is_valid(self) -> bool:
        ivs = self.intervals()
        if any(b < a for a, b in ivs):
            return False
        return all(ivs[i][1] <= ivs[i + 1][0] for i in range(len(ivs) - 1))


class InfeasibleCover(ValueError):
    pass


def ap_cover_constraints(B: FiberedSet, t: int):
    """LP data (c, A_ub, b_ub) in the variables (base, v, l0, D); slot = index - min index."""
    lo = B.indices[0]
    slots = {i - lo: X for i, X in B.items()}
    if max(slots) >= t:
        raise ValueError(f"fibres span {max(slots) + 1} slots but t = {t}")
    A_ub, b_ub = [], []
    for i, X in slots.items():
        A_ub.append([1, i, 0, 0])            # base + i v <= min B_i
        b_ub.append(X.lo)
        A_ub.append([-1, -i, -1, -i])        # base + i v + l0 + i D >= max B_i
        b_ub.append(-X.hi)
    for i in range(t):
        A_ub.append([0, 0, -1, -i])          # l0 + i D >= 0
        b_ub.append(0)
    for i in range(t - 1):
        A_ub.append([0, -1, 1, i])           # l0 + i D <= v  (consecutive intervals disjoint)
        b_ub.append(0)
    c = [0, 0, t, Fraction(t * (t - 1), 2)]
    return c, A_ub, b_ub


def ap_cover(B: FiberedSet, t: int) -> ApCover:
    """Minimum-length arithmetic progression of t intervals with lengths in AP containing B.

    Fibre i goes to slot i - min index.  Solved exactly as a linear program in
    (base, v, l0, D); touching consecutive intervals are allowed.
    """
    if len(B) == 0:
        raise ValueError("cover of an empty fibred set")
    c, A_ub, b_ub = ap_cover_constraints(B, t)
    res = linprog(c, A_ub, b_ub, free=True)
    if not res.ok:
        raise InfeasibleCover(f"AP cover LP is {res.status}")
    base, v, l0, D = res.x
    return ApCover(base, v, l0, D, t)


def ap_cover_contains(cover: ApCover, B: FiberedSet) -> bool:
    lo = B.indices[0]
    ivs = cover.intervals()
    return all(IntervalUnion([ivs[i - lo]]).covers(X.lo, X.hi) for i, X in B.items())


# ---------------------------------------------------------------------------
# reference sets T1, T2

@dataclass(frozen=True)
class TReferences:
    T1: FiberedSet
    T2: FiberedSet
    t1: Fraction
    t2: Fraction
    t1_formula: Fraction
    t2_formula: Fraction
    compressed: bool
    inside_sumset: bool

    @property
    def identities_hold(self) -> bool:
        return self.t1 == self.t1_formula and self.t2 == self.t2_formula


def is_compressed(B: FiberedSet) -> bool:
    """Fibres 1..t, each an interval [0, l_i]."""
    idx = B.indices
    return idx == list(range(1, len(idx) + 1)) and all(len(X) == 1 and X.lo == 0 for X in B.fibers.values())


def t_references(B: FiberedSet) -> TReferences:
    """T1 = ∪ (B_i+B_i) ∪ (B_i+B_{i+1}) and T2 = ∪ (B_1+B_i) ∪ (B_i+B_t), with the identities."""
    if any(len(X) != 1 for X in B.fibers.values()):
        raise ValueError("every fibre must be a single interval")
    idx = B.indices
    first, last = idx[0], idx[-1]
    t = len(idx)
    parts1: dict[int, IntervalUnion] = {}
    parts2: dict[int, IntervalUnion] = {}

    def put(d: dict, j: int, S: IntervalUnion) -> None:
        d[j] = d[j].union(S) if j in d else S

    for n, i in enumerate(idx):
        put(parts1, 2 * i, sumset(B[i], B[i]))
        if n + 1 < t:
            put(parts1, i + idx[n + 1], sumset(B[i], B[idx[n + 1]]))
        put(parts2, first + i, sumset(B[first], B[i]))
        put(parts2, i + last, sumset(B[i], B[last]))
    T1, T2 = FiberedSet(parts1), FiberedSet(parts2)
    BB = sumset(B, B)
    ends = B[first].measure + B[last].measure
    return TReferences(T1, T2, T1.measure, T2.measure,
                       4 * B.measure - ends, 2 * B.measure + (t - 1) * ends,
                       is_compressed(B), T1.issubset(BB) and T2.issubset(BB))
