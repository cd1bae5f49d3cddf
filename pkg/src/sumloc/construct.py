"""Constructive steps: stretch-and-project merging, snapping translates, separation boosting, Ruzsa covers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence, Union

from ._exact import BudgetExceeded, dot, primitive, q, rref, unimodular_completion, vec
from .core_sets import IntervalUnion, LatticeSet, sumset
from .geometry import DEFAULT_BUDGET, HPolytope, convex_hull_2d, minkowski_2d, point_in_polygon, polygon_area
from .lp import linprog
from .progressions import Box, ConvexProgression


# ---------------------------------------------------------------------------
# stretch and project

@dataclass(frozen=True)
class Stretch:
    """C ⊆ pi(C) + [alpha_min, alpha_min + width] rho with pi(x) = x - (h.x) rho onto H = {h.x = 0}."""

    m: Fraction
    normal: tuple[Fraction, ...]
    alpha_min: Fraction
    alpha_max: Fraction
    contained: bool


def _stretch_lp(C: HPolytope, rho: Sequence) -> Fraction:
    """max m such that x and x + m rho both lie in C."""
    d = C.dim
    A, b = C.A, C.b
    Arho = [dot(a, rho) for a in A]
    rows = [list(a) + [0] for a in A] + [list(a) + [ar] for a, ar in zip(A, Arho)]
    res = linprog([0] * d + [1], rows, b + b, free=[True] * d + [False], maximize=True)
    if res.status == "unbounded":
        raise ValueError("C is unbounded along rho")
    if not res.ok:
        raise ValueError("C is empty")
    return res.value


def stretch_and_project(C: HPolytope, rho: Sequence) -> Stretch:
    """Longest chord of C along rho and a hyperplane certificate from the dual LP.

    The dual of the chord LP is min b.(u+w) over u, w >= 0 with A^T(u+w) = 0 and
    (A rho).w = 1.  Its optimum w gives h = A^T w with h.rho = 1 and h.C of width m,
    so every x in C is pi(x) + (h.x) rho with h.x in an interval of length m.
    """
    rho = vec(rho)
    if not any(rho):
        raise ValueError("rho must be nonzero")
    if not C.is_bounded():
        raise ValueError("C is unbounded")
    m = _stretch_lp(C, rho)
    A, b = C.A, C.b
    n = len(A)
    Arho = [dot(a, rho) for a in A]
    A_eq = [[A[i][j] for i in range(n)] + [A[i][j] for i in range(n)] for j in range(C.dim)]
    b_eq = [0] * C.dim
    A_eq.append([0] * n + Arho)
    b_eq.append(1)
    res = linprog(list(b) + list(b), A_eq=A_eq, b_eq=b_eq)
    if not res.ok:
        raise ValueError(f"separating hyperplane LP is {res.status}")
    w = res.x[n:]
    h = tuple(sum((w[i] * A[i][j] for i in range(n)), Fraction(0)) for j in range(C.dim))
    vs = C.vertices()
    alphas = [dot(h, v) for v in vs]
    lo, hi = min(alphas), max(alphas)
    return Stretch(m, h, lo, hi, hi - lo <= m and dot(h, rho) == 1)


def project_along(x: Sequence, h: Sequence, rho: Sequence) -> tuple[Fraction, ...]:
    """x - (h.x) rho."""
    a = dot(h, x)
    return tuple(xi - a * ri for xi, ri in zip(vec(x), rho))


# ---------------------------------------------------------------------------
# merging

@dataclass(frozen=True)
class MergeOutcome:
    rho: tuple[int, ...]
    m: Fraction
    normal: tuple[Fraction, ...]
    P_new: ConvexProgression
    Q_new: Box
    size_ratio: Fraction
    size_before: Fraction
    size_after: Fraction
    contained: bool
    checked_points: int


class NoClosePair(Exception):
    """No distinct rho, rho' in sC' with phi(rho) - phi(rho') in l0 Q: a valid terminal state."""


def _canonical(v: Sequence[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _fm_eliminate_last(rows: list[tuple[Fraction, tuple[Fraction, ...]]]) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    """Fourier-Motzkin: project {a.y <= c0} onto the first d-1 coordinates."""
    pos, neg, zero = [], [], []
    for c0, a in rows:
        (pos if a[-1] > 0 else neg if a[-1] < 0 else zero).append((c0, a))
    out = {(c0, a[:-1]) for c0, a in zero}
    for c1, a1 in pos:
        for c2, a2 in neg:
            l1, l2 = -a2[-1], a1[-1]
            a = tuple(l1 * x + l2 * y for x, y in zip(a1[:-1], a2[:-1]))
            c = l1 * c1 + l2 * c2
            g = max((abs(x) for x in a), default=Fraction(0))
            if g:
                a, c = tuple(x / g for x in a), c / g
            out.add((c, a))
    return sorted(out)


def _inverse(U: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(U)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(U)]
    R, _ = rref(aug)
    return [r[n:] for r in R]


def merge_step(P: ConvexProgression, Q: Box, s: int, l0: int, budget: int = DEFAULT_BUDGET) -> MergeOutcome:
    """One merging step: collapse P along a short direction rho and absorb it into Q.

    rho is the lexicographically first canonical difference of lattice points of
    C = sC' whose image lies in l0 Q.  With h from ``stretch_and_project`` and the
    linear projection pi(x) = x - (h.x) rho, every z in C' ∩ Z^d satisfies
    phi(z) = phi(pi(z)) + (h.z) phi(rho) with |h.z| <= m, which is checked pointwise.
    """
    if not P.symmetric:
        raise ValueError("merge_step needs C' = -C'")
    if not Q.is_symmetric():
        raise ValueError("merge_step needs Q = -Q")
    if P.d == 0:
        raise NoClosePair("a 0-dimensional progression has no distinct pair")
    d = P.d
    C = P.C.scale(s)
    pts = C.lattice_points(budget)
    diffs = sorted({tuple(a - b for a, b in zip(x, y)) for x, y in combinations(pts, 2)} |
                   {tuple(b - a for a, b in zip(x, y)) for x, y in combinations(pts, 2)})
    lQ = Q.shape().dilate(l0)
    rho = next((r for r in diffs if _canonical(r) and lQ.contains(P.apply(r))), None)
    if rho is None:
        raise NoClosePair("no close pair in sC'")
    st = stretch_and_project(C, rho)
    m, h = st.m, st.normal
    r0 = primitive(rho)
    U = unimodular_completion(r0)
    Uinv = _inverse(U)
    # C in y-coordinates (z = U y), then drop y_d
    rows_y = [(c0, tuple(sum((a[i] * U[i][j] for i in range(d)), Fraction(0)) for j in range(d)))
              for c0, a in C.rows]
    C2 = HPolytope(tuple(_fm_eliminate_last(rows_y)), d - 1)
    cols = []
    for j in range(d - 1):
        col = tuple(Fraction(U[i][j]) for i in range(d))
        cols.append(P.apply(project_along(col, h, rho)))
    phi2 = [tuple(cols[j][i] for j in range(d - 1)) for i in range(P.k)]
    P2 = ConvexProgression(C2, phi2, symmetric=True)
    phi_rho = P.apply(rho)
    Q2 = Q.add_generator(tuple(m * x for x in phi_rho))

    # pointwise witness for P+Q ⊆ P'+Q'
    ok = True
    base_pts = P.lattice_points(1, budget)
    for z in base_pts:
        alpha = dot(h, z)
        y = [sum((Uinv[i][j] * z[j] for j in range(d)), Fraction(0)) for i in range(d)]
        y2 = tuple(y[:-1])
        img = tuple(sum((a * x for a, x in zip(row, y2)), Fraction(0)) for row in phi2)
        if abs(alpha) > m or not C2.contains(y2) or \
                img != tuple(p - alpha * f for p, f in zip(P.apply(z), phi_rho)):
            ok = False
            break
    vals2 = P2.values(1, budget)
    if ok:
        # every p + vertex of Q lands in P'+Q'
        for p in {P.apply(z) for z in base_pts}:
            for v in Q.vertices():
                x = tuple(a + b for a, b in zip(p, v))
                if not any(Q2.contains(tuple(a - b for a, b in zip(x, p2))) for p2 in vals2):
                    ok = False
                    break
            if not ok:
                break
    before = len({P.apply(z) for z in base_pts}) * Q.volume
    after = len(vals2) * Q2.volume
    return MergeOutcome(tuple(rho), m, h, P2, Q2, after / before if before else Fraction(0),
                        before, after, ok and st.contained, len(base_pts))


def merge_contains_1d(P: ConvexProgression, Q: Box, out: MergeOutcome) -> bool:
    """For k = 1: P+Q ⊆ P'+Q' as interval unions."""
    qi, qi2 = Q.to_interval_union(), out.Q_new.to_interval_union()
    lhs = IntervalUnion((p[0] + qi.lo, p[0] + qi.hi) for p in P.values())
    rhs = IntervalUnion((p[0] + qi2.lo, p[0] + qi2.hi) for p in out.P_new.values())
    return lhs.issubset(rhs)


# ---------------------------------------------------------------------------
# locality oracles: contains(x, num, den) decides den*x ∈ num·L (num-fold sumset)

class IntervalLocality:
    """L = [-r, r] in R."""

    convex = True

    def __init__(self, r):
        self.r = q(r)

    def contains(self, x, num: int = 1, den: int = 1) -> bool:
        x = q(x[0] if isinstance(x, (tuple, list)) else x)
        return abs(den * x) <= num * self.r

    def describe(self) -> str:
        return f"[-{self.r}, {self.r}]"


class BoxLocality:
    """L a symmetric box (zonotope) in R^k."""

    convex = True

    def __init__(self, box: Box):
        if not box.is_symmetric():
            raise ValueError("L must be symmetric")
        self.box = box

    def contains(self, x, num: int = 1, den: int = 1) -> bool:
        x = vec(x if isinstance(x, (tuple, list)) else (x,))
        return self.box.dilate(Fraction(num, den)).contains(x)

    def describe(self) -> str:
        return repr(self.box)


class GapBoxLocality:
    """L = {sum lam_i a_i : |lam_i| <= r_i} + Q with Q a symmetric box, in R^k.

    num·L is the GAP with radii num*r_i plus num*Q; membership scans the GAP.
    """

    convex = False

    def __init__(self, steps: Sequence, radii: Sequence[int], box: Box, budget: int = 10 ** 5):
        self.steps = tuple(vec(a if isinstance(a, (tuple, list)) else (a,)) for a in steps)
        self.radii = tuple(int(r) for r in radii)
        if not box.is_symmetric():
            raise ValueError("Q must be symmetric")
        self.box = box
        self.budget = budget

    def contains(self, x, num: int = 1, den: int = 1) -> bool:
        from itertools import product
        x = vec(x if isinstance(x, (tuple, list)) else (x,))
        target = tuple(den * v for v in x)
        Qn = self.box.dilate(num)
        ranges = [range(-num * r, num * r + 1) for r in self.radii]
        if math.prod(len(rg) for rg in ranges) > self.budget:
            raise BudgetExceeded("GAP scan exceeds budget")
        for lam in product(*ranges):
            p = tuple(sum((l * a[i] for l, a in zip(lam, self.steps)), Fraction(0)) for i in range(len(target)))
            if Qn.contains(tuple(t - v for t, v in zip(target, p))):
                return True
        return False

    def describe(self) -> str:
        return f"GAP{self.steps}x{self.radii} + {self.box!r}"


class ScaledLocality:
    """The convex set (num/den) L for a convex locality L."""

    convex = True

    def __init__(self, base, num: int, den: int):
        if not base.convex:
            raise ValueError("scaling is exact only for convex L")
        self.base, self.num, self.den = base, num, den

    def contains(self, x, num: int = 1, den: int = 1) -> bool:
        return self.base.contains(x, num * self.num, den * self.den)

    def describe(self) -> str:
        return f"({self.num}/{self.den})*{self.base.describe()}"


Locality = Union[IntervalLocality, BoxLocality, GapBoxLocality, ScaledLocality]


# ---------------------------------------------------------------------------
# snapping

def c_adjust(k: int, m: int, n: int) -> int:
    """c_{1,m,n} = max(m, n) and c_{k,m,n} = k m (m+n) c_{k-1, m(m+n), nm}."""
    c = 1
    factor = 1
    while k > 1:
        factor *= k * m * (m + n)
        m, n = m * (m + n), n * m
        k -= 1
    c = max(m, n)
    return factor * c


@dataclass(frozen=True)
class Relation:
    plus: tuple[int, ...]    # multiset of indices
    minus: tuple[int, ...]
    value: tuple[Fraction, ...]


@dataclass(frozen=True)
class SnapCertificate:
    X: tuple
    snapped: tuple
    f: tuple                      # adjustment per point
    c: int
    c_prime: int
    relations: tuple[Relation, ...]
    weights: tuple                # p_x as rational combinations of relation values
    eliminations: tuple           # (variable, coefficient, (m, n)) per step
    coefficients_in_bounds: bool
    relations_exact: bool
    adjustments_in_L: bool
    combination_certificate: bool

    @property
    def verified(self) -> bool:
        return self.relations_exact and self.adjustments_in_L and self.combination_certificate


def _points(X) -> list[tuple[Fraction, ...]]:
    return [vec(x if isinstance(x, (tuple, list)) else (x,)) for x in X]


def find_relations(X, L, s: int, budget: int = 10 ** 6) -> list[Relation]:
    """All s-multiset pairs with sum(x) - sum(y) in L, one per coefficient vector up to sign."""
    pts = _points(X)
    n = len(pts)
    ms = list(combinations_with_replacement(range(n), s))
    if len(ms) ** 2 > budget:
        raise BudgetExceeded(f"{len(ms)} multisets exceed the relation budget")
    k = len(pts[0]) if pts else 0
    sums = [tuple(sum((pts[i][j] for i in m), Fraction(0)) for j in range(k)) for m in ms]
    seen = set()
    out = []
    for a, b in combinations(range(len(ms)), 2):
        coeff = [0] * n
        for i in ms[a]:
            coeff[i] += 1
        for i in ms[b]:
            coeff[i] -= 1
        if not any(coeff):
            continue
        key = tuple(coeff)
        neg = tuple(-c for c in coeff)
        if key in seen or neg in seen:
            continue
        diff = tuple(x - y for x, y in zip(sums[a], sums[b]))
        if L.contains(diff, 1, 1):
            seen.add(key)
            out.append(Relation(ms[a], ms[b], diff))
    return out


def snap(X, L, s: int, budget: int = 10 ** 6) -> SnapCertificate:
    """Adjust X so every near-relation sum x_i - sum y_i in L becomes an exact identity.

    The system sum p_{x_i} - sum p_{y_i} = (relation value) is solved by eliminating
    one variable at a time, always the one with the largest coefficient (latest
    index on ties); variables absent from every equation are set to 0.  Each p_x is
    tracked as a rational combination of relation values, which yields c' (the lcm
    of the denominators) and the certificate sum |c' w| <= c.
    """
    pts = _points(X)
    t = len(pts)
    if t == 0:
        raise ValueError("empty point set")
    k = len(pts[0])
    rels = find_relations(pts, L, s, budget)
    R = len(rels)
    # equation: (coeffs over variables, combination over relations)
    eqs = []
    for r, rel in enumerate(rels):
        coeff = [Fraction(0)] * t
        for i in rel.plus:
            coeff[i] += 1
        for i in rel.minus:
            coeff[i] -= 1
        comb = [Fraction(0)] * R
        comb[r] = Fraction(1)
        eqs.append((coeff, comb))
    m_, n_ = s, 1
    in_bounds = True
    solved: dict[int, tuple] = {}   # var -> (coeffs over later-solved vars, comb)
    order = []
    steps = []
    remaining = set(range(t))
    while remaining:
        live = [(c, w) for c, w in eqs if any(c[i] for i in remaining)]
        eqs = live
        if not eqs:
            for v in sorted(remaining):
                solved[v] = ([Fraction(0)] * t, [Fraction(0)] * R)
                order.append(v)
            break
        best = max(((abs(c[v]), v, e) for e, (c, _) in enumerate(eqs) for v in remaining if c[v]),
                   key=lambda x: (x[0], x[1], -x[2]))
        _, v, e = best
        c_e, w_e = eqs[e]
        a = c_e[v]
        expr = ([-x / a if i != v else Fraction(0) for i, x in enumerate(c_e)], [x / a for x in w_e])
        solved[v] = expr
        order.append(v)
        remaining.discard(v)
        m0 = abs(a * n_)
        steps.append((v, a, (m_, n_)))
        new = []
        for idx, (c, w) in enumerate(eqs):
            if idx == e:
                continue
            f = c[v]
            if f:
                c = [x + f * y if i != v else Fraction(0) for i, (x, y) in enumerate(zip(c, expr[0]))]
                w = [x - f * y for x, y in zip(w, expr[1])]
            new.append((c, w))
        m_, n_ = m_ * (m_ + n_), n_ * int(m0)
        for c, _ in new:
            for x in c:
                if (x * n_).denominator != 1 or abs(x * n_) > m_:
                    in_bounds = False
        eqs = new
    # back substitution in reverse elimination order
    value: dict[int, list] = {}
    for v in reversed(order):
        coeffs, comb = solved[v]
        w = list(comb)
        for j, cj in enumerate(coeffs):
            if cj:
                w = [x + cj * y for x, y in zip(w, value[j])]
        value[v] = w
    weights = tuple(tuple(value[i]) for i in range(t))
    p = [tuple(sum((wr * rel.value[j] for wr, rel in zip(weights[i], rels)), Fraction(0)) for j in range(k))
         for i in range(t)]
    c = c_adjust(t, s, 1)
    dens = [w.denominator for ws in weights for w in ws if w]
    cp = math.lcm(*dens) if dens else 1
    comb_ok = cp <= c and all(sum(abs(cp * w) for w in ws) <= c for ws in weights)
    in_L = all(L.contains(pi, c, cp) for pi in p)
    snapped = tuple(tuple(x - y for x, y in zip(pts[i], p[i])) for i in range(t))
    exact = all(
        tuple(sum((snapped[i][j] for i in rel.plus), Fraction(0)) - sum((snapped[i][j] for i in rel.minus), Fraction(0))
              for j in range(k)) == (Fraction(0),) * k
        for rel in rels)
    f = tuple(tuple(-x for x in pi) for pi in p)
    return SnapCertificate(tuple(pts), snapped, f, c, cp, tuple(rels), weights, tuple(steps),
                           in_bounds, exact, in_L, comb_ok)


# ---------------------------------------------------------------------------
# separation boosting

@dataclass(frozen=True)
class GammaReport:
    gamma: int
    case: str
    distances: tuple          # sorted distinct d values (math.inf if above the cap)
    verified: bool


def _pair_distance(diff, L, c: int, cap: int) -> Union[int, float]:
    """Smallest l >= 1 with diff in c l^2 · L / (c' l) for some c' <= c, or inf above cap."""
    for l in range(1, cap + 1):
        if L.convex:
            if L.contains(diff, c * l * l, l):
                return l
        elif any(L.contains(diff, c * l * l, cp * l) for cp in range(1, c + 1)):
            return l
    return math.inf


def _in_scaled(diff, L, c: int, a: int, b: int) -> bool:
    """diff in c a · L / (c' b) for some c' <= c."""
    if L.convex:
        return L.contains(diff, c * a, b)
    return any(L.contains(diff, c * a, cp * b) for cp in range(1, c + 1))


def separation_gamma(Y, L, c: int, lam: int) -> GammaReport:
    """gamma <= lam^C(t,2) such that closeness at scale lam*gamma already holds at scale gamma."""
    pts = _points(Y)
    t = len(pts)
    gstar = lam ** math.comb(t, 2)
    if t < 2:
        return GammaReport(1, "vacuous", (), True)
    cap = gstar * lam
    ds = sorted({_pair_distance(tuple(a - b for a, b in zip(x, y)), L, c, cap)
                 for x, y in combinations(pts, 2)})
    if ds[0] > lam:
        gamma, case = 1, "d1>lambda"
    elif ds[-1] <= lam ** len(ds):
        gamma, case = gstar, "all_small"
    else:
        i = next(i for i in range(len(ds) - 1) if ds[i + 1] > lam * ds[i])
        gamma, case = int(ds[i]), "gap"
    ok = True
    for x, y in combinations(pts, 2):
        diff = tuple(a - b for a, b in zip(x, y))
        if _in_scaled(diff, L, c, lam * lam * gamma * gamma, lam * gamma) and \
                not _in_scaled(diff, L, c, gamma * gamma, gamma):
            ok = False
    return GammaReport(gamma, case, tuple(ds), ok and gamma <= gstar)


@dataclass(frozen=True)
class BoostedSnap:
    gamma: GammaReport
    c: int
    mu: int
    certificate: SnapCertificate
    verified: bool


def boosted_snap(X, L, s: int, mu: int, budget: int = 10 ** 6) -> BoostedSnap:
    """Snap X against L' = c! c gamma^2 · L/(c! gamma) = c gamma L (convex L only).

    Y = s·X, c is the snapping constant for #Y points and gamma comes from
    ``separation_gamma(Y, L, c, mu)``.  Afterwards every s-relation with
    difference in c mu^2 gamma^2 · L/(mu gamma) is checked to be exact.
    """
    if not L.convex:
        raise NotImplementedError("boosted snapping is implemented for convex L")
    pts = _points(X)
    k = len(pts[0])
    Y = sorted({tuple(sum((pts[i][j] for i in m), Fraction(0)) for j in range(k))
                for m in combinations_with_replacement(range(len(pts)), s)})
    c = c_adjust(len(Y), s, 1)
    g = separation_gamma(Y, L, c, mu)
    Lp = ScaledLocality(L, c * g.gamma, 1)
    cert = snap(pts, Lp, s, budget)
    # the boosted conclusion, checked with c' = 1 (the largest of the dilates for convex L)
    wide = ScaledLocality(L, c * mu * g.gamma, 1)
    ok = cert.verified and g.verified
    for rel in find_relations(pts, wide, s, budget):
        lhs = tuple(sum((cert.snapped[i][j] for i in rel.plus), Fraction(0))
                    - sum((cert.snapped[i][j] for i in rel.minus), Fraction(0)) for j in range(k))
        if any(lhs):
            ok = False
    return BoostedSnap(g, c, mu, cert, ok)


# ---------------------------------------------------------------------------
# Ruzsa covering

def _first_uncovered(A: IntervalUnion, covered: Sequence[tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """inf of A minus a finite union of closed intervals, or None if A is covered."""
    cov = sorted(covered)
    for a, b in A.intervals:
        p, hit = a, False
        while True:
            ext = [v for u, v in cov if u <= p <= v]
            if not ext:
                break
            hit = True
            if max(ext) <= p:
                break
            p = max(ext)
        if not hit or p < b:
            return p
    return None


def ruzsa_cover(A, B) -> list:
    """Greedy maximal packing x+B inside A+B; then A ⊆ X+B-B and #X <= |A+B|/|B|."""
    if isinstance(A, LatticeSet):
        if len(B) == 0:
            raise ValueError("B must be nonempty")
        D = sumset(B, B.negate())
        Dset = set(D.points)
        X: list = []
        for a in A:
            if all(tuple(x - y for x, y in zip(a, xp)) not in Dset for xp in X):
                X.append(a)
        return X
    if isinstance(A, IntervalUnion):
        if B.measure <= 0:
            raise ValueError("|B| must be positive")
        D = sumset(B, B.negate())
        X = []
        while True:
            covered = [(x + u, x + v) for x in X for u, v in D.intervals]
            x = _first_uncovered(A, covered)
            if x is None:
                return X
            X.append(x)
    raise NotImplementedError("Ruzsa covers are implemented for lattice sets and interval unions")


@dataclass(frozen=True)
class RuzsaReport:
    X: tuple
    bound: Fraction
    covered: bool

    @property
    def ok(self) -> bool:
        return self.covered and len(self.X) <= math.ceil(self.bound)


def ruzsa_report(A, B) -> RuzsaReport:
    X = ruzsa_cover(A, B)
    bound = sumset(A, B).measure / B.measure
    if isinstance(A, LatticeSet):
        D = sumset(B, B.negate())
        cover = {tuple(a + b for a, b in zip(x, d)) for x in X for d in D.points}
        covered = all(a in cover for a in A)
    else:
        D = sumset(B, B.negate())
        cover = IntervalUnion((x + u, x + v) for x in X for u, v in D.intervals)
        covered = A.issubset(cover)
    return RuzsaReport(tuple(X), bound, covered)


# ---------------------------------------------------------------------------
# segment sums of convex bodies

def contained_line_sum(C: Sequence, x: Sequence, l) -> tuple[Fraction, Fraction]:
    """|C + [-l, l] x| and (2 l k + 1)|C| for a convex body C ∋ 0, x (interval or polygon)."""
    l = q(l)
    if len(C) == 2 and not isinstance(C[0], (tuple, list)):
        lo, hi = q(C[0]), q(C[1])
        xv = q(x[0] if isinstance(x, (tuple, list)) else x)
        if not (lo <= 0 <= hi and lo <= xv <= hi):
            raise ValueError("C must contain 0 and x")
        return (hi - lo) + 2 * l * abs(xv), (2 * l + 1) * (hi - lo)
    poly = convex_hull_2d(C)
    xv = vec(x)
    if not (point_in_polygon((0, 0), poly) and point_in_polygon(xv, poly)):
        raise ValueError("C must contain 0 and x")
    seg = [tuple(-l * v for v in xv), tuple(l * v for v in xv)]
    return polygon_area(minkowski_2d(poly, seg)), (4 * l + 1) * polygon_area(poly)
