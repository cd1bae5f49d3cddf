"""Exact rational linear programming.

A dense two-phase simplex over ``Fraction`` with Bland's anti-cycling rule, plus
brute-force vertex enumeration, which is used as an independent oracle in tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from ._exact import q, rank, solve


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    inv = 1 / T[r][c]
    T[r] = [v * inv for v in T[r]]
    pr = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                row = T[i]
                T[i] = [a - f * b for a, b in zip(row, pr)]


def _simplex(T: list[list[Fraction]], basis: list[int], ncols: int, allowed: Sequence[bool]) -> str:
    """Minimise the objective held in the last row of T (reduced costs, rhs in last column).

    Rows 0..m-1 are constraints; the last row is the objective with T[-1][j] the
    reduced cost of column j.  Bland's rule: entering = lowest index with negative
    reduced cost, leaving = lowest basis index among ratio ties.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter


def linprog(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
            A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
            free: Sequence[bool] | bool = False, maximize: bool = False) -> LPResult:
    """Solve min (or max) c.x subject to A_ub x <= b_ub, A_eq x = b_eq.

    Variables are non-negative unless flagged in ``free`` (a bool applies to all).
    """
    n = len(c)
    if isinstance(free, bool):
        free = [free] * n
    cost = [q(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    # split free variables x = x+ - x-
    cols: list[tuple[int, int]] = []  # (original index, sign)
    for j in range(n):
        cols.append((j, 1))
        if free[j]:
            cols.append((j, -1))
    nv = len(cols)

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for row, b in zip(A_ub, b_ub):
        rows.append([q(row[j]) * s for j, s in cols])
        rhs.append(q(b))
        kinds.append("ub")
    for row, b in zip(A_eq, b_eq):
        rows.append([q(row[j]) * s for j, s in cols])
        rhs.append(q(b))
        kinds.append("eq")
    m = len(rows)
    n_slack = sum(1 for k in kinds if k == "ub")
    total = nv + n_slack + m  # structural, slack, artificial
    T: list[list[Fraction]] = []
    si = 0
    for i in range(m):
        r = rows[i] + [Fraction(0)] * (n_slack + m) + [rhs[i]]
        if kinds[i] == "ub":
            r[nv + si] = Fraction(1)
            si += 1
        if r[-1] < 0:
            r = [-v for v in r]
        r[nv + n_slack + i] = Fraction(1)
        T.append(r)
    basis = [nv + n_slack + i for i in range(m)]

    # phase 1: minimise the sum of artificials
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            if not (nv + n_slack <= j < total):
                obj[j] -= T[i][j]
    T.append(obj)
    allowed = [True] * total
    _simplex(T, basis, total, allowed)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= nv + n_slack:
            j = next((j for j in range(nv + n_slack) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    allowed = [j < nv + n_slack for j in range(total)]

    # phase 2
    full_cost = [Fraction(0)] * (total + 1)
    for k, (j, s) in enumerate(cols):
        full_cost[k] = cost[j] * s
    obj = full_cost[:]
    for i in range(m):
        cb = full_cost[basis[i]]
        if cb:
            obj = [a - cb * b for a, b in zip(obj, T[i])]
    T[-1] = obj
    status = _simplex(T, basis, total, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    xs = [Fraction(0)] * total
    for i in range(m):
        xs[basis[i]] = T[i][-1]
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * xs[k]
    value = sum((cv * xv for cv, xv in zip((q(v) for v in c), x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)


def feasible_point(A_ub, b_ub, A_eq=(), b_eq=(), n: Optional[int] = None) -> Optional[tuple[Fraction, ...]]:
    """Some point of {A_ub x <= b_ub, A_eq x = b_eq} with free variables, or None."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq, free=True)
    return res.x if res.ok else None


def vertices(A: Sequence[Sequence], b: Sequence) -> list[tuple[Fraction, ...]]:
    """All vertices of {x : A x <= b} by brute force over n-subsets of rows."""
    A = [[q(v) for v in r] for r in A]
    b = [q(v) for v in b]
    if not A:
        return []
    n = len(A[0])
    if n == 0:
        return [()] if all(v >= 0 for v in b) else []
    out = set()
    for idx in combinations(range(len(A)), n):
        sub = [A[i] for i in idx]
        x = solve(sub, [b[i] for i in idx])
        if x is None:
            continue
        # the subsystem must pin down a unique point
        if rank(sub) < n:
            continue
        if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            out.add(tuple(x))
    return sorted(out)


def vertex_optimum(c: Sequence, A: Sequence[Sequence], b: Sequence, maximize: bool = False) -> Optional[Fraction]:
    """Optimum of c.x over the vertices of {A x <= b} (oracle for bounded pointed problems)."""
    vs = vertices(A, b)
    if not vs:
        return None
    vals = [sum(q(ci) * xi for ci, xi in zip(c, v)) for v in vs]
    return max(vals) if maximize else min(vals)
