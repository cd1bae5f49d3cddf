"""Text formats for set-values and progressions.

Set files start with a header line:

* ``latticeset k``: one point per line, k integers.
* ``intervals``: one closed interval per line, ``lo hi`` as rationals ``p/q``.
* ``polycube c k``: one cell per line (k integers), or a cell box ``lo... : hi...``.
* ``points k``: rational points, one per line (translate sets for snapping).
* ``fibered``: ``i lo hi`` per line, the interval [lo, hi] in fibre i.
* ``hybrid d k c``: ``z1 .. zd ; c1 .. ck`` per line, a cell of Z^d x R^k.

Progression files hold ``gap k d`` (base line, d step lines, a lengths line) or
``convexprog d k [symmetric]`` (inequality rows ``c0 c1 .. cd`` meaning
``c1 x1 + .. + cd xd <= c0``, then k rows of the matrix phi), optionally followed
by ``box k m`` (a centre line, then m generator lines).  Blank lines and lines
starting with ``#`` are ignored.  Writers emit a canonical form, so reading and
writing again reproduces the file byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ._exact import q
from .brunn_minkowski import HybridSet
from .core_sets import FiberedSet, IntervalUnion, LatticeSet, Polycube
from .geometry import HPolytope
from .progressions import Box, ConvexProgression, Gap

SetValue = Union[LatticeSet, IntervalUnion, Polycube, FiberedSet, HybridSet, "PointSet"]


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class PointSet:
    """A finite list of rational points (order kept, duplicates dropped)."""

    k: int
    points: tuple[tuple[Fraction, ...], ...]


def _r(x: Fraction) -> str:
    return str(q(x))


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append(s)
    return out


def _nums(line: str, n: Optional[int] = None) -> list[Fraction]:
    try:
        vals = [Fraction(tok) for tok in line.split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad number in {line!r}: {exc}") from None
    if n is not None and len(vals) != n:
        raise FormatError(f"expected {n} numbers in {line!r}")
    return vals


def _ints(line: str, n: Optional[int] = None) -> list[int]:
    vals = _nums(line, n)
    if any(v.denominator != 1 for v in vals):
        raise FormatError(f"expected integers in {line!r}")
    return [int(v) for v in vals]


# ---------------------------------------------------------------------------
# sets

def parse_set(text: str) -> SetValue:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty set file")
    head, body = lines[0].split(), lines[1:]
    kind = head[0]
    try:
        if kind == "latticeset":
            k = int(head[1])
            return LatticeSet((tuple(_ints(ln, k)) for ln in body), dim=k)
        if kind == "intervals":
            return IntervalUnion(_nums(ln, 2) for ln in body)
        if kind == "polycube":
            c, k = Fraction(head[1]), int(head[2])
            boxes = []
            for ln in body:
                if ":" in ln:
                    lo, hi = ln.split(":")
                    boxes.append((_ints(lo, k), _ints(hi, k)))
                else:
                    p = _ints(ln, k)
                    boxes.append((p, p))
            return Polycube(c, boxes, k)
        if kind == "points":
            k = int(head[1])
            seen: dict = {}
            for ln in body:
                seen.setdefault(tuple(_nums(ln, k)), None)
            return PointSet(k, tuple(seen))
        if kind == "fibered":
            fib: dict[int, list] = {}
            for ln in body:
                i, lo, hi = _nums(ln, 3)
                if i.denominator != 1:
                    raise FormatError(f"fibre index must be an integer in {ln!r}")
                fib.setdefault(int(i), []).append((lo, hi))
            return FiberedSet(fib)
        if kind == "hybrid":
            d, k, c = int(head[1]), int(head[2]), Fraction(head[3])
            pts = []
            for ln in body:
                z, _, cell = ln.partition(";")
                pts.append((_ints(z, d) if d else [], _ints(cell, k) if k else []))
            return HybridSet(d, k, pts, c)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed {kind} file: {exc}") from None
    raise FormatError(f"unknown set header {lines[0]!r}")


def format_set(S: SetValue) -> str:
    out: list[str] = []
    if isinstance(S, LatticeSet):
        out.append(f"latticeset {S.dim}")
        out += [" ".join(map(str, p)) for p in sorted(S.points)]
    elif isinstance(S, IntervalUnion):
        out.append("intervals")
        out += [f"{_r(lo)} {_r(hi)}" for lo, hi in S.intervals]
    elif isinstance(S, Polycube):
        out.append(f"polycube {_r(S.scale)} {S.dim}")
        for lo, hi in S.boxes:
            a, b = " ".join(map(str, lo)), " ".join(map(str, hi))
            out.append(a if lo == hi else f"{a} : {b}")
    elif isinstance(S, PointSet):
        out.append(f"points {S.k}")
        out += [" ".join(_r(x) for x in p) for p in S.points]
    elif isinstance(S, FiberedSet):
        out.append("fibered")
        out += [f"{i} {_r(lo)} {_r(hi)}" for i, X in S.items() for lo, hi in X.intervals]
    elif isinstance(S, HybridSet):
        out.append(f"hybrid {S.d} {S.k} {_r(S.scale)}")
        out += [f"{' '.join(map(str, z))} ; {' '.join(map(str, c))}".strip() for z, c in sorted(S.points)]
    else:
        raise TypeError(f"cannot write {type(S).__name__}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# progressions

@dataclass(frozen=True)
class ProgressionFile:
    P: Union[Gap, ConvexProgression]
    Q: Optional[Box] = None


def parse_progression(text: str) -> ProgressionFile:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty progression file")
    box_at = next((i for i, ln in enumerate(lines) if ln.split()[0] == "box"), len(lines))
    main, box = lines[:box_at], lines[box_at:]
    head = main[0].split()
    try:
        if head[0] == "gap":
            k, d = int(head[1]), int(head[2])
            if len(main) != (d + 3 if d else 2):
                raise FormatError(f"gap {k} {d} needs a base line, {d} step lines and a lengths line")
            base = _nums(main[1], k)
            steps = [_nums(ln, k) for ln in main[2:2 + d]]
            lengths = _ints(main[2 + d], d) if d else []
            P: Union[Gap, ConvexProgression] = Gap(base, steps, lengths)
        elif head[0] == "convexprog":
            d, k = int(head[1]), int(head[2])
            symmetric = len(head) > 3 and head[3] == "symmetric"
            body = main[1:]
            rows, phi = body[:len(body) - k], body[len(body) - k:]
            C = HPolytope.from_rows([_nums(ln, d + 1) for ln in rows], dim=d)
            P = ConvexProgression(C, [_nums(ln, d) for ln in phi], symmetric)
        else:
            raise FormatError(f"unknown progression header {main[0]!r}")
        Q = None
        if box:
            bh = box[0].split()
            k, m = int(bh[1]), int(bh[2])
            if len(box) != m + 2:
                raise FormatError(f"box {k} {m} needs a centre line and {m} generator lines")
            Q = Box(_nums(box[1], k), [_nums(ln, k) for ln in box[2:]])
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed progression file: {exc}") from None
    return ProgressionFile(P, Q)


def format_progression(pf: ProgressionFile) -> str:
    P, out = pf.P, []
    if isinstance(P, Gap):
        out.append(f"gap {P.k} {P.d}")
        out.append(" ".join(_r(x) for x in P.base))
        out += [" ".join(_r(x) for x in a) for a in P.steps]
        if P.d:
            out.append(" ".join(map(str, P.lengths)))
    else:
        out.append(f"convexprog {P.d} {P.k}" + (" symmetric" if P.symmetric else ""))
        out += [" ".join(_r(x) for x in (c0,) + a) for c0, a in P.C.rows]
        out += [" ".join(_r(x) for x in row) for row in P.phi]
    if pf.Q is not None:
        Q = pf.Q
        out.append(f"box {Q.k} {len(Q.generators)}")
        out.append(" ".join(_r(x) for x in Q.center))
        out += [" ".join(_r(x) for x in g) for g in Q.generators]
    return "\n".join(out) + "\n"


def read_set(path: str) -> SetValue:
    with open(path, encoding="utf-8") as fh:
        return parse_set(fh.read())


def read_progression(path: str) -> ProgressionFile:
    with open(path, encoding="utf-8") as fh:
        return parse_progression(fh.read())


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
