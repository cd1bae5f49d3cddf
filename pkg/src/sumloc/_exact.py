"""Exact rational helpers: parsing, linear algebra, lattices and certified roots.

Everything here works on ``fractions.Fraction`` and Python ints.  Irrational
quantities only ever appear as enclosures ``[lo, hi]`` with rational ends.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration or search would exceed its declared budget."""


class UndecidableComparison(ArithmeticError):
    """Raised when a certified comparison cannot be decided within the precision cap."""


def q(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and ``p/q`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # floats are accepted only when they are exactly representable decimals
        return Fraction(str(x))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def fmt(x) -> str:
    """Render an exact number as ``p/q`` (integers without denominator)."""
    x = q(x)
    return str(x)


def vec(x) -> tuple:
    """Coerce a scalar or a sequence into a tuple of Fractions."""
    if isinstance(x, (int, Fraction, str, float)) and not isinstance(x, bool):
        return (q(x),)
    return tuple(q(c) for c in x)


def ivec(x) -> tuple:
    """Coerce a scalar or a sequence into a tuple of ints (must be integral)."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = (x,)
    out = []
    for c in x:
        c = q(c)
        if c.denominator != 1:
            raise ValueError(f"non-integer coordinate {c}")
        out.append(int(c))
    return tuple(out)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g


# ---------------------------------------------------------------------------
# dense exact linear algebra

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [[q(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    M, piv = rref(rows)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -M[i][f]
        basis.append(v)
    return basis


def solve(A, b) -> Optional[list[Fraction]]:
    """One exact solution of A x = b (free variables set to 0), or None."""
    rows = [list(r) + [q(bi)] for r, bi in zip(A, b)]
    if not rows:
        return []
    n = len(rows[0]) - 1
    M, piv = rref(rows)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = M[i][n]
    return x


def det(M) -> Fraction:
    M = [[q(x) for x in r] for r in M]
    n = len(M)
    if n == 0:
        return Fraction(1)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return out


# ---------------------------------------------------------------------------
# integer lattices

def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Echelon basis (over Z) of the lattice generated by integer vectors."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < dim:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        # Euclid on column `col` until one row holds the gcd
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            rest = []
            for r in nz[1:]:
                f = r[col] // p[col]
                r = [x - f * y for x, y in zip(r, p)]
                if r[col] != 0:
                    rest.append(r)
                elif any(r):
                    rows.append(r)
            nz = [p] + rest
            rows = [r for r in rows if r[col] == 0] + nz
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = [r for r in rows if r[col] == 0 and any(r)]
        col += 1
    return [tuple(b) for b in basis]


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    v = list(map(int, v))
    for b in basis:
        col = next(i for i, x in enumerate(b) if x != 0)
        if v[col] % b[col]:
            return False
        f = v[col] // b[col]
        v = [x - f * y for x, y in zip(v, b)]
    return not any(v)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd_all(v)
    return tuple(int(x) // g for x in v) if g else tuple(v)


def unimodular_completion(d0: Sequence[int]) -> list[list[int]]:
    """Integer matrix U with det ±1 whose last column is the primitive vector d0."""
    d0 = list(map(int, d0))
    n = len(d0)
    if gcd_all(d0) != 1:
        raise ValueError("vector must be primitive")
    # column operations reducing d0 to e_last, recorded on an identity matrix
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    v = d0[:]
    # we build W with W @ d0 = e_last by row operations, then U = W^{-1}
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def rowop(i, j, f):  # row_i -= f * row_j
        v[i] -= f * v[j]
        W[i] = [a - f * b for a, b in zip(W[i], W[j])]

    def swap(i, j):
        v[i], v[j] = v[j], v[i]
        W[i], W[j] = W[j], W[i]

    last = n - 1
    while True:
        nz = [i for i in range(n) if v[i] != 0]
        if len(nz) == 1:
            i = nz[0]
            if i != last:
                swap(i, last)
            if v[last] < 0:
                v[last] = -v[last]
                W[last] = [-a for a in W[last]]
            break
        nz.sort(key=lambda i: abs(v[i]))
        p = nz[0]
        for i in nz[1:]:
            rowop(i, p, v[i] // v[p])
    # U = W^{-1}, integer since det W = ±1
    Wf = [[Fraction(x) for x in r] for r in W]
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(Wf)]
    R, _ = rref(aug)
    U = [[int(x) for x in r[n:]] for r in R]
    return U


# ---------------------------------------------------------------------------
# certified real roots

def iroot(N: int, n: int) -> int:
    """floor(N ** (1/n)) for N >= 0."""
    if N < 0:
        raise ValueError("negative radicand")
    if N < 2 or n == 1:
        return N
    x = 1 << ((N.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + N // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > N:
        x -= 1
    while (x + 1) ** n <= N:
        x += 1
    return x


def rational_root(x, n: int) -> Optional[Fraction]:
    """Exact n-th root of a non-negative rational if it is rational."""
    x = q(x)
    if x < 0:
        raise ValueError("negative radicand")
    a, b = iroot(x.numerator, n), iroot(x.denominator, n)
    if a ** n == x.numerator and b ** n == x.denominator:
        return Fraction(a, b)
    return None


def root_bounds(x, n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= x**(1/n) <= hi with hi - lo <= 2**-bits."""
    x = q(x)
    r = rational_root(x, n)
    if r is not None:
        return r, r
    N = (x.numerator << (n * bits)) // x.denominator
    k = iroot(N, n)
    return Fraction(k, 1 << bits), Fraction(k + 1, 1 << bits)


class CReal:
    """A real number known exactly (``exact``) or through refinable enclosures."""

    __slots__ = ("exact", "_bounds", "label")

    def __init__(self, exact=None, bounds=None, label: str = ""):
        self.exact = None if exact is None else q(exact)
        self._bounds = bounds
        self.label = label

    def bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        if self.exact is not None:
            return self.exact, self.exact
        return self._bounds(bits)

    def __add__(self, other):
        other = other if isinstance(other, CReal) else CReal(other)
        if self.exact is not None and other.exact is not None:
            return CReal(self.exact + other.exact)
        a, b = self, other

        def bnd(bits):
            l1, h1 = a.bounds(bits)
            l2, h2 = b.bounds(bits)
            return l1 + l2, h1 + h2
        return CReal(bounds=bnd)

    __radd__ = __add__

    def __neg__(self):
        if self.exact is not None:
            return CReal(-self.exact)
        a = self
        return CReal(bounds=lambda bits: tuple(-x for x in reversed(a.bounds(bits))))

    def __sub__(self, other):
        other = other if isinstance(other, CReal) else CReal(other)
        return self + (-other)

    def approx(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def render(self, bits: int = 64) -> str:
        if self.exact is not None:
            return fmt(self.exact)
        lo, hi = self.bounds(bits)
        return f"[{float(lo):.12g}, {float(hi):.12g}]"

    def __repr__(self):
        return f"CReal({self.render()})"


def power_mean(a, b, n: int) -> CReal:
    """(a**(1/n) + b**(1/n))**n for rationals a, b >= 0.

    Rational exactly when a/b is a rational n-th power (or one side is 0);
    otherwise the value is irrational and only enclosures are returned.
    """
    a, b = q(a), q(b)
    if a < 0 or b < 0:
        raise ValueError("power mean of negative measure")
    if a == 0 or b == 0:
        return CReal(a + b)
    r = rational_root(a / b, n)
    if r is not None:
        return CReal(b * (1 + r) ** n)

    def bnd(bits):
        la, ha = root_bounds(a, n, bits)
        lb, hb = root_bounds(b, n, bits)
        return (la + lb) ** n, (ha + hb) ** n
    return CReal(bounds=bnd)


def compare(x, y, max_bits: int = 1 << 14) -> int:
    """Sign of x - y for CReal/rational inputs, decided by refinement."""
    x = x if isinstance(x, CReal) else CReal(x)
    y = y if isinstance(y, CReal) else CReal(y)
    if x.exact is not None and y.exact is not None:
        return (x.exact > y.exact) - (x.exact < y.exact)
    bits = 64
    while bits <= max_bits:
        lx, hx = x.bounds(bits)
        ly, hy = y.bounds(bits)
        if lx > hy:
            return 1
        if hx < ly:
            return -1
        bits *= 2
    raise UndecidableComparison(f"cannot separate {x.render()} and {y.render()}")


def cmax(values: Sequence[CReal]) -> CReal:
    """Max of certified reals; exact when the winner is decidably exact."""
    vals = list(values)
    if all(v.exact is not None for v in vals):
        return CReal(max(v.exact for v in vals))
    # try to single out a winner; ties between irrationals are harmless for the max
    best = vals[0]
    for v in vals[1:]:
        try:
            if compare(v, best, max_bits=1024) > 0:
                best = v
        except UndecidableComparison:
            def bnd(bits, a=best, b=v):
                l1, h1 = a.bounds(bits)
                l2, h2 = b.bounds(bits)
                return max(l1, l2), max(h1, h2)
            best = CReal(bounds=bnd)
    return best
