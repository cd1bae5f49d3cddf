"""The ten acceptance criteria as seeded, self-contained checks.

Each ``criterion_N`` returns a :class:`CriterionResult`; ``run_all`` runs them in
order.  The pytest acceptance module and the CLI ``suite`` command share this code.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ._exact import compare
from .bench import generate, remove_small_box, verify_example
from .brunn_minkowski import (HybridSet, compress, compress_all, cube_bm, freiman3k4,
                              projection_sum)
from .construct import (IntervalLocality, BoxLocality, NoClosePair, merge_contains_1d, merge_step, snap)
from .core_sets import FiberedSet, IntervalUnion, LatticeSet, Polycube, sumset
from .covering import co11, co_t_1d, gap_cover, gap_cover_exhaustive, is_compressed, t_references
from .geometry import HPolytope
from .locality import coco_upper, maxconv
from .progressions import Box, ConvexProgression, Gap, enumerate_gap, freiman_violation, is_proper, lift
from .progressions import is_box_separated

DEFAULT_SEED = 20240531


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    cases: int
    failures: int
    detail: str = ""
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} {verdict}  {self.title}: {self.cases} cases, "
                f"{self.failures} failures ({self.seconds:.1f}s){'; ' + self.detail if self.detail else ''}")


def _rng(seed: int, n: int) -> random.Random:
    return random.Random(seed * 1009 + n)


def _frac(rng: random.Random, lo: int, hi: int, den: int) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


# ---------------------------------------------------------------------------
# 1. extremal examples

def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    fails, cases, notes = 0, 0, []
    checks = []
    for t in (2, 3, 5):
        checks.append((generate("ap_boxes", k=1, t=t), "half_sumset_measure", 2 - Fraction(1, t)))
    for t in (3, 5, 10):
        checks.append((generate("cone", k=1, t=t), "sumset_measure", Fraction(sum(range(2, 2 * t + 1)))))
    for delta in (Fraction(1, 5), Fraction(3, 5)):
        d2 = delta ** 2
        checks.append((generate("two_boxes", k=1, delta=delta), "half_sumset_measure", 1 + (1 - d2 + d2) / 2))
    for inst, key, expected in checks:
        t0 = time.perf_counter()
        report = verify_example(inst)
        row = next(r for r in report.rows if r.name == key)
        elapsed = time.perf_counter() - t0
        cases += 1
        ok = row.actual == expected and row.predicted == expected and report.ok and elapsed < 1
        if not ok:
            fails += 1
            notes.append(f"{inst.name}{inst.params}: {key} actual {row.actual}, expected {expected}, {elapsed:.2f}s")
    return CriterionResult(1, "extremal-example golden values", fails == 0, cases, fails, "; ".join(notes))


# ---------------------------------------------------------------------------
# 2. Freiman 3k-4

def random_lattice_set(rng: random.Random, max_size: int, max_diam: int) -> LatticeSet:
    diam = rng.randint(0, max_diam)
    n = rng.randint(1, min(max_size, diam + 1))
    if n == 1:
        return LatticeSet([0], dim=1)
    inner = rng.sample(range(1, diam), min(n - 2, max(diam - 1, 0))) if diam > 1 else []
    return LatticeSet([0, diam] + inner, dim=1)


def random_interval_union(rng: random.Random, max_parts: int = 5, den: int = 4, span: int = 30) -> IntervalUnion:
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        lo = _frac(rng, 0, span, den)
        parts.append((lo, lo + _frac(rng, 0, 4, den) + Fraction(1, den)))
    return IntervalUnion(parts)


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 2)
    fails, notes = 0, []
    for _ in range(2000):
        A = random_lattice_set(rng, 12, 40)
        ineq = freiman3k4(A)
        # second route to the AP hull: minimum one-translate 1-GAP cover
        ap = gap_cover(A, 1, 1).size
        if not ineq.holds or ap - len(A) != ineq.details["holes"]:
            fails += 1
            notes.append(f"A={A.values()}")
    fixture = freiman3k4(LatticeSet([0, 1, 2, 4], dim=1))
    if not fixture.tight:
        fails += 1
        notes.append(f"equality fixture: {fixture.lhs} vs {fixture.rhs}")
    for _ in range(500):
        A = random_interval_union(rng)
        if not freiman3k4(A).holds:
            fails += 1
            notes.append(f"A={A.intervals}")
    return CriterionResult(2, "Freiman 3k-4 (discrete and continuous)", fails == 0, 2501, fails, "; ".join(notes[:3]))


# ---------------------------------------------------------------------------
# 3. discrete Brunn-Minkowski

def random_hybrid(rng: random.Random, d: int, k: int, n: int, side: int = 4) -> HybridSet:
    while side ** (d + k) < 2 * n:
        side += 1
    pts = set()
    while len(pts) < n:
        pts.add((tuple(rng.randrange(side) for _ in range(d)), tuple(rng.randrange(side) for _ in range(k))))
    return HybridSet(d, k, pts)


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 3)
    fails, notes = 0, []
    for _ in range(500):
        d, k = rng.randint(1, 2), rng.randint(0, 1)
        na = rng.randint(1, 15)
        nb = rng.randint(1, min(15, 30 - na))
        A, B = random_hybrid(rng, d, k, na), random_hybrid(rng, d, k, nb)
        ps = projection_sum(A, B)
        ok = ps.holds and cube_bm(A, B).holds
        for i in range(1, d + 1):
            if projection_sum(compress(A, i), compress(B, i)).lhs > ps.lhs:
                ok = False
        if projection_sum(compress_all(A), compress_all(B)).lhs > ps.lhs:
            ok = False
        if not ok:
            fails += 1
            notes.append(f"d={d} k={k} A={sorted(A.points)} B={sorted(B.points)}")
    return CriterionResult(3, "discrete Brunn-Minkowski and compression", fails == 0, 500, fails, "; ".join(notes[:2]))


# ---------------------------------------------------------------------------
# 4. max-convolution lower bound

def random_part_set(rng: random.Random):
    """Interval unions clustered around a short progression, or small planar polycubes."""
    if rng.random() < 0.15:
        cells = set()
        for _ in range(rng.randint(1, 3)):
            ox, oy = rng.choice((0, 9, 18)), rng.choice((0, 9))
            for _ in range(rng.randint(1, 3)):
                cells.add((ox + rng.randrange(3), oy + rng.randrange(3)))
        return Polycube.from_cells(1, cells)
    step = rng.randint(5, 12)
    parts = []
    for j in range(rng.randint(1, 4)):
        for _ in range(rng.randint(1, 2)):
            lo = j * step + _frac(rng, 0, 2, 4)
            parts.append((lo, lo + _frac(rng, 0, 2, 4) + Fraction(1, 4)))
    return IntervalUnion(parts)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 4)
    fails, notes = 0, []
    for _ in range(300):
        A = random_part_set(rng)
        k = A.dim
        res = coco_upper(A, 2)
        total = maxconv(res.quotient, k).total
        if compare(sumset(A, A).measure, total) < 0:
            fails += 1
            notes.append(repr(A))
    A = IntervalUnion([(0, 1), (10, 11)])
    mc = maxconv(coco_upper(A, 2).quotient, 1).total
    if not (mc.exact == 6 and sumset(A, A).measure == 6):
        fails += 1
        notes.append(f"two-far-intervals fixture total {mc.render()}")
    return CriterionResult(4, "max-convolution soundness", fails == 0, 301, fails, "; ".join(notes[:2]))


# ---------------------------------------------------------------------------
# 5. separated lifts

def random_lift_instance(rng: random.Random):
    while True:
        d = rng.randint(1, 2)
        steps = [(_frac(rng, 1, 6, 2),) for _ in range(d)]
        P = Gap((0,), steps, [rng.randint(1, 3) for _ in range(d)])
        Q = Box.symmetric_interval(Fraction(rng.randint(1, 6), 20))
        if is_proper(P, 2) and is_box_separated(P, Q, 4) is None:
            return P, Q


def _two_fold_separated(P: Gap, Q: Box) -> bool:
    """Distinct elements of 2P differ outside 4Q (the hypothesis the lift argument uses)."""
    vals = enumerate_gap(P).as_numbers()
    sums = sorted({a + b for a in vals for b in vals})
    r = Q.to_interval_union().hi
    return all(b - a > 4 * r for a, b in zip(sums, sums[1:]))


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 5)
    fails, notes, strong = 0, [], 0
    for _ in range(100):
        P, Q = random_lift_instance(rng)
        r = Q.to_interval_union().hi
        vals = enumerate_gap(P).as_numbers()
        grid = [r * Fraction(j, 2) for j in range(-2, 3)]
        pts = sorted({(p + g,) for p in vals for g in grid})
        image = [x.as_vector() for x in lift(P, Q, pts)]
        bad = freiman_violation(pts, image, 2)
        if bad is not None:
            fails += 1
            strong += _two_fold_separated(P, Q)
            if len(notes) < 2:
                notes.append(f"P steps {[str(a[0]) for a in P.steps]} lengths {P.lengths}, Q radius {r}: {bad}")
    detail = "; ".join(notes)
    if fails:
        detail += f"; failing instances that are also 2P-separated: {strong}"
    return CriterionResult(5, "lift is a Freiman 2-isomorphism", fails == 0, 100, fails, detail)


# ---------------------------------------------------------------------------
# 6. merge step

def random_symmetric_progression(rng: random.Random):
    d = rng.randint(1, 2)
    radii = [rng.randint(1, 3) for _ in range(d)]
    C = HPolytope.box([-r for r in radii], radii)
    phi = [[_frac(rng, -3, 3, 10) for _ in range(d)]]
    Q = Box.symmetric_interval(_frac(rng, 0, 1, 10) + Fraction(1, 20))
    return ConvexProgression(C, phi, symmetric=True), Q


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 6)
    fails, notes = 0, []
    P = ConvexProgression(HPolytope.box([-2], [2]), [[Fraction(1, 10)]], symmetric=True)
    Q = Box.interval(Fraction(-3, 20), Fraction(3, 20))
    out = merge_step(P, Q, 1, 1)
    fixture_ok = (out.m == 4 and out.P_new.values() == [(Fraction(0),)]
                  and out.Q_new.to_interval_union() == IntervalUnion([(Fraction(-11, 20), Fraction(11, 20))])
                  and out.contained and merge_contains_1d(P, Q, out))
    if not fixture_ok:
        fails += 1
        notes.append(f"fixture: m={out.m} P'={out.P_new.values()} Q'={out.Q_new.to_interval_union()}")
    returned = 0
    for _ in range(50):
        P, Q = random_symmetric_progression(rng)
        s, l0 = rng.randint(1, 2), rng.randint(1, 3)
        try:
            out = merge_step(P, Q, s, l0)
        except NoClosePair:
            continue
        returned += 1
        expected_Q = Q.add_generator(tuple(out.m * x for x in P.apply(out.rho)))
        ok = (out.contained and merge_contains_1d(P, Q, out) and out.P_new.d == P.d - 1
              and out.Q_new == expected_Q)
        if not ok:
            fails += 1
            notes.append(f"C rows {P.C.rows} phi {P.phi} Q {Q} s={s} l0={l0}")
    return CriterionResult(6, "merge step containment", fails == 0, 1 + returned, fails,
                           "; ".join(notes[:2]) or f"{returned} of 50 random progressions had a close pair")


# ---------------------------------------------------------------------------
# 7. snapping

def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 7)
    fails, notes = 0, []
    for case in range(100):
        n = rng.randint(3, 5)
        r = Fraction(1, rng.choice((10, 20, 50)))
        k = 2 if case % 4 == 3 else 1
        a = [_frac(rng, -5, 5, 3) for _ in range(k)]
        b = [_frac(rng, 1, 4, 2) for _ in range(k)]
        noise = [[Fraction(rng.randint(-8, 8), 64) * r for _ in range(k)] for _ in range(n)]
        X = [tuple(a[j] + i * b[j] + noise[i][j] for j in range(k)) for i in range(n)]
        L = IntervalLocality(r) if k == 1 else BoxLocality(Box((0, 0), [(r, 0), (0, r)]))
        cert = snap(X, L, 2)
        Y = cert.snapped
        # every AP coincidence i + j = u + v must now hold exactly
        restored = all(tuple(Y[i][j] + Y[jj][j] for j in range(k)) == tuple(Y[u][j] + Y[v][j] for j in range(k))
                       for i in range(n) for jj in range(i, n) for u in range(n) for v in range(u, n)
                       if i + jj == u + v)
        if not (cert.verified and restored):
            fails += 1
            notes.append(f"X={X}")
    return CriterionResult(7, "snapping certificates", fails == 0, 100, fails, "; ".join(notes[:2]))


# ---------------------------------------------------------------------------
# 8. cover search against the exhaustive oracle

def cover_corpus(seed: int = DEFAULT_SEED, size: int = 200) -> list[LatticeSet]:
    """Fixed corpus: #A <= 8, diam <= 20 (diameters above 14 are kept to one in four)."""
    rng = _rng(seed, 8)
    out = []
    while len(out) < size:
        diam = rng.randint(0, 20) if rng.random() < 0.25 else rng.randint(0, 14)
        n = rng.randint(1, min(8, diam + 1))
        if n == 1:
            A = LatticeSet([0], dim=1)
        else:
            A = LatticeSet([0, diam] + rng.sample(range(1, diam), n - 2), dim=1)
        out.append(A)
    return out


def criterion_8(seed: int = DEFAULT_SEED, corpus: Optional[list] = None) -> CriterionResult:
    corpus = cover_corpus(seed) if corpus is None else corpus
    fails, notes, cases = 0, [], 0
    for A in corpus:
        for d in range(3):
            for t in range(1, 4):
                cases += 1
                fast = gap_cover(A, d, t)
                slow = gap_cover_exhaustive(A, d, t)
                if not fast.optimal or fast.size != slow:
                    fails += 1
                    notes.append(f"A={A.values()} d={d} t={t}: {fast.size} vs {slow}")
    return CriterionResult(8, "gap_cover equals exhaustive oracle", fails == 0, cases, fails, "; ".join(notes[:3]))


# ---------------------------------------------------------------------------
# 9. theorem-shape spot checks

SCATTERED_FIXTURES = (
    # (d, ell, size, spacing); for d = 1, spacing > diam(C) (ell+1) #A rules out every cover by ell translates
    (1, 1, 2, 7),
    (1, 1, 3, 17),
    (1, 2, 3, 31),
    (2, 1, 2, 19),
)


def minimal_translates(A: LatticeSet, d: int, threshold: int, t_max: int) -> Optional[int]:
    """Least t with an exhaustive gap_t cover of size <= threshold."""
    for t in range(1, t_max + 1):
        if gap_cover_exhaustive(A, d, t) <= threshold:
            return t
    return None


def house_delta_hat(A: IntervalUnion) -> tuple[Fraction, int]:
    """(delta_hat, t) with |A+A| = (4 - 2/t + delta_hat)|A| and t least with |co_t(A)| < 2|A|."""
    m = A.measure
    t = next(t for t in range(1, len(A.intervals) + 1) if co_t_1d(A, t).measure < 2 * m)
    return sumset(A, A).measure / m - 4 + Fraction(2, t), t


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    fails, notes, cases = 0, [], 0
    for delta in (Fraction(1, 5), Fraction(1, 10), Fraction(1, 20), Fraction(3, 5)):
        inst = generate("two_boxes", k=1, delta=delta)
        A, A2 = inst.set, remove_small_box(inst)
        lost = A.measure - A2.measure
        cases += 1
        if not (lost == delta ** 2 * A.measure and lost <= min(delta, delta ** 2 + 60 * delta ** 3) * A.measure):
            fails += 1
            notes.append(f"(a) delta={delta}: lost {lost}")
    for d, ell, size, spacing in SCATTERED_FIXTURES:
        inst = generate("scattered", ell=ell, size=size, d=d, spacing=spacing)
        A = inst.set
        t = minimal_translates(A, d, (ell + 1) * len(A), ell + 1)
        cases += 1
        if t != ell + 1:
            fails += 1
            notes.append(f"(b) d={d} ell={ell}: minimal count {t}")
    for t_h in (1, 2, 3):
        for delta in (Fraction(1, 10), Fraction(1, 50), Fraction(1, 200)):
            inst = generate("house", t=t_h, delta=delta)
            dh, _ = house_delta_hat(inst.set)
            excess = co11(inst.fibered).excess
            cases += 1
            if not (dh >= 0 and excess <= 150 * dh * inst.set.measure):
                fails += 1
                notes.append(f"(c) t={t_h} delta={delta}: excess {excess}, delta_hat {dh}")
    return CriterionResult(9, "theorem-shape spot checks", fails == 0, cases, fails, "; ".join(notes[:3]))


# ---------------------------------------------------------------------------
# 10. T-reference identities

def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 10)
    fails, notes = 0, []
    for _ in range(100):
        t = rng.randint(1, 6)
        lengths = sorted((_frac(rng, 0, 5, 6) + Fraction(1, 6) for _ in range(t)), reverse=True)
        B = FiberedSet({i + 1: [(0, l)] for i, l in enumerate(lengths)})
        ref = t_references(B)
        if not (is_compressed(B) and ref.identities_hold and ref.inside_sumset):
            fails += 1
            notes.append(f"lengths={lengths}")
    return CriterionResult(10, "T-reference identities", fails == 0, 100, fails, "; ".join(notes[:2]))


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number](seed)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(seed: int = DEFAULT_SEED, numbers=None) -> list[CriterionResult]:
    return [run(n, seed) for n in (numbers or sorted(CRITERIA))]
