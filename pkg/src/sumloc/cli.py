"""Command-line entry point: ``sumloc <subcommand> [flags]``.

Every subcommand writes a JSON-lines report to standard output.  Exit status is
0 when every assertion passes, 1 on an assertion failure, 2 on a usage or input
error and 3 when a search budget is exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ._exact import BudgetExceeded, compare, q
from .acceptance import DEFAULT_SEED, run as run_criterion, CRITERIA
from .bench import NAMES, ExampleInstance, ParameterError, Prediction, generate, verify_example
from .brunn_minkowski import (HybridSet, PreconditionError, addition_bounds, bigstep, bm_separated, cube_bm,
                              fiber_compress, freiman3k4, projection_sum, secondorder)
from .construct import BoxLocality, IntervalLocality, NoClosePair, merge_step, ruzsa_report, snap
from .core_sets import (FiberedSet, IntervalUnion, LatticeSet, Polycube, doubling, hulls, iterated_sumset,
                        sumset, thickness_report)
from .covering import ap_cover, ap_cover_contains, co11, co_t_1d, gap_cover, nondeg_check, t_references
from .formats import (FormatError, PointSet, ProgressionFile, format_progression, format_set, parse_progression,
                      parse_set)
from .locality import coco_upper, maxconv
from .progressions import Box, ConvexProgression, Gap, LiftError, freiman_violation, is_full, is_proper, lift
from .report import Report

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CHECKS = ("freiman3k4", "addition", "discbm", "cubebm", "fiber-compress", "bm-separated", "bigstep",
          "secondorder", "nondeg", "t-references", "proper", "lift")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _read(report: Report, path: Optional[str], label: str = "in") -> bytes:
    if path is None:
        raise UsageError(f"--{label} FILE is required")
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    report.inputs[label] = data
    return data


def _set(report: Report, path: Optional[str], label: str = "in"):
    return parse_set(_read(report, path, label).decode("utf-8"))


def _prog(report: Report, path: Optional[str], label: str = "in") -> ProgressionFile:
    return parse_progression(_read(report, path, label).decode("utf-8"))


def _value(tok: str):
    try:
        f = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        return tok
    return int(f) if f.denominator == 1 and "/" not in tok and "." not in tok else f


def _params(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise UsageError(f"parameter {part!r} is not key=value")
            out[key.strip()] = _value(val.strip())
    return out


def _set_summary(S) -> dict:
    if isinstance(S, LatticeSet):
        return {"kind": "latticeset", "dim": S.dim, "count": len(S)}
    if isinstance(S, IntervalUnion):
        return {"kind": "intervals", "parts": len(S.intervals), "measure": S.measure}
    if isinstance(S, Polycube):
        return {"kind": "polycube", "dim": S.dim, "scale": S.scale, "boxes": len(S.boxes), "measure": S.measure}
    if isinstance(S, FiberedSet):
        return {"kind": "fibered", "fibers": len(S), "measure": S.measure}
    return {"kind": type(S).__name__}


def _gap_dict(P: Gap) -> dict:
    return {"base": list(P.base), "steps": [list(a) for a in P.steps], "lengths": list(P.lengths)}


def _box_dict(Q: Box) -> dict:
    return {"center": list(Q.center), "generators": [list(g) for g in Q.generators]}


def _progression_dict(P: ConvexProgression) -> dict:
    return {"rows": [[c0] + list(a) for c0, a in P.C.rows], "phi": [list(r) for r in P.phi], "d": P.d}


def _locality(args, k: int):
    if args.radius is None:
        raise UsageError("--radius R is required (L = [-R, R]^k)")
    r = q(args.radius)
    if k == 1:
        return IntervalLocality(r)
    return BoxLocality(Box((0,) * k, [tuple(r if i == j else 0 for j in range(k)) for i in range(k)]))


# ---------------------------------------------------------------------------
# subcommands

def cmd_sumset(args, rep: Report) -> None:
    A = _set(rep, args.inp)
    B = _set(rep, args.with_, "with") if args.with_ else A
    S = iterated_sumset(A, args.s) if args.with_ is None and args.s > 1 else sumset(A, B)
    rep.output("A", _set_summary(A))
    rep.output("measure_A", A.measure)
    rep.output("measure_sumset", S.measure)
    rep.output("sumset", _set_summary(S))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_set(S))


def cmd_doubling(args, rep: Report) -> None:
    A = _set(rep, args.inp)
    rep.output("measure", A.measure)
    rep.output("sumset_measure", sumset(A, A).measure)
    rep.output("doubling", doubling(A))


def cmd_cover(args, rep: Report) -> Optional[int]:
    A = _set(rep, args.inp)
    if isinstance(A, LatticeSet):
        res = gap_cover(A, args.d, args.t, budget=args.budget, limit=args.limit, symmetric=args.symmetric)
        rep.output("X", list(res.X))
        rep.output("P", _gap_dict(res.P) if res.P is not None else None)
        rep.output("Q", None)
        rep.output("size", res.size)
        rep.output("optimal", res.optimal)
        rep.output("nodes", res.nodes)
        if not res.optimal:
            return EXIT_BUDGET
        if res.feasible:
            rep.check("cover_contains_A", "A", "subset", "X+P", all(a in res.cover_set() for a in A))
    elif isinstance(A, IntervalUnion):
        C = co_t_1d(A, args.t)
        rep.output("intervals", [list(iv) for iv in C.intervals])
        rep.output("size", C.measure)
        rep.output("optimal", True)
        rep.check("cover_contains_A", "A", "subset", "cover", A.issubset(C))
    elif isinstance(A, FiberedSet):
        cov = ap_cover(A, args.t)
        rep.output("base", cov.base)
        rep.output("step", cov.step)
        rep.output("first_length", cov.first_length)
        rep.output("length_step", cov.length_step)
        rep.output("size", cov.total_length)
        rep.output("optimal", True)
        rep.check("cover_contains_A", "A", "subset", "ap cover", ap_cover_contains(cov, A))
    else:
        raise UsageError("cover takes a latticeset, intervals or fibered file")
    return None


def cmd_hull(args, rep: Report) -> None:
    A = _set(rep, args.inp)
    if isinstance(A, LatticeSet):
        H = hulls(A, args.budget)
        rep.output("vertices", [list(v) for v in H.vertices])
        rep.output("lattice_basis", [list(b) for b in H.lattice_basis])
        rep.output("discrete_hull_count", len(H.discrete))
        if A.dim >= 2:
            th = thickness_report(A, args.budget)
            rep.output("thickness", th.h)
            rep.output("thickness_normal", list(th.normal))
        rep.check("hull_contains_A", "A", "subset", "co(A)", A.issubset(H.discrete))
        return
    if isinstance(A, FiberedSet):
        res = co11(A)
        rep.output("hull", {str(i): [list(iv) for iv in X.intervals] for i, X in res.hull.items()})
        rep.output("excess", res.excess)
        rep.check("excess_nonnegative", res.excess, ">=", 0, res.excess >= 0)
        return
    res = coco_upper(A, args.s, args.budget)
    k = args.k or A.dim
    mc = maxconv(res.quotient, k)
    AA = sumset(A, A).measure
    rep.output("parts", [p.render() for p in res.parts])
    rep.output("labels", list(res.labels))
    rep.output("mu", {str(i): v for i, v in sorted(res.quotient.mu.items())})
    rep.output("upper_bound", res.upper_bound)
    rep.output("merges", res.merges)
    rep.output("maxconv_total", mc.total)
    rep.output("sumset_measure", AA)
    rep.check("maxconv_lower_bound", AA, ">=", mc.total, compare(AA, mc.total) >= 0)


def cmd_check(args, rep: Report) -> None:
    name = args.name
    if name == "freiman3k4":
        ineq = freiman3k4(_set(rep, args.inp))
    elif name == "addition":
        res = addition_bounds(_set(rep, args.inp), _set(rep, args.with_, "with"))
        rep.output("bounds", list(res.bounds))
        rep.output("swapped", res.swapped)
        rep.check("addition_bounds", res.actual, ">=", max(res.bounds), res.holds)
        return
    elif name in ("discbm", "cubebm"):
        A = _set(rep, args.inp)
        B = _set(rep, args.with_, "with") if args.with_ else A
        if not isinstance(A, HybridSet):
            raise UsageError(f"{name} takes hybrid set files")
        ineq = projection_sum(A, B) if name == "discbm" else cube_bm(A, B)
    elif name == "fiber-compress":
        B = _set(rep, args.inp)
        C = fiber_compress(B)
        rep.output("compressed", format_set(C))
        rep.check("measure_preserved", C.measure, "==", B.measure, C.measure == B.measure)
        lhs, rhs = sumset(C, C).measure, sumset(B, B).measure
        rep.check("sumset_not_larger", lhs, "<=", rhs, lhs <= rhs)
        return
    elif name == "bm-separated":
        pf = _prog(rep, args.prog, "prog")
        if not isinstance(pf.P, Gap) or pf.Q is None:
            raise UsageError("bm-separated needs a gap progression file with a box section")
        ineq = bm_separated(pf.P, pf.Q, _set(rep, args.inp), _set(rep, args.with_, "with"), args.n)
    elif name == "bigstep":
        if args.values is None or args.c is None or args.N is None:
            raise UsageError("bigstep needs --values, --c and --N")
        ineq = bigstep([q(v) for v in args.values.split(",")], q(args.c), q(args.N))
    elif name == "secondorder":
        if args.x is None or args.y is None or args.l is None:
            raise UsageError("secondorder needs --x, --y and --l")
        ineq = secondorder(q(args.x), q(args.y), args.l)
        rep.check("certificate", ineq.details["certificate"], ">=", 0, ineq.details["certified"])
    elif name == "nondeg":
        A = _set(rep, args.inp)
        rep.output("nondegenerate", nondeg_check(A, args.d, args.t, args.budget))
        return
    elif name == "t-references":
        ref = t_references(_set(rep, args.inp))
        rep.check("T1_identity", ref.t1, "==", ref.t1_formula, ref.t1 == ref.t1_formula)
        rep.check("T2_identity", ref.t2, "==", ref.t2_formula, ref.t2 == ref.t2_formula)
        rep.check("inside_sumset", "T1,T2", "subset", "B+B", ref.inside_sumset)
        rep.output("compressed", ref.compressed)
        return
    elif name == "proper":
        pf = _prog(rep, args.inp)
        rep.output("proper", is_proper(pf.P, args.s, args.budget))
        if args.n is not None:
            rep.output("full", is_full(pf.P, args.n, args.budget))
        return
    elif name == "lift":
        pf = _prog(rep, args.prog, "prog")
        pts = _set(rep, args.inp)
        if not isinstance(pts, PointSet) or not isinstance(pf.P, Gap) or pf.Q is None:
            raise UsageError("lift needs --prog (gap with box) and --in (points)")
        image = [x.as_vector() for x in lift(pf.P, pf.Q, pts.points, args.budget)]
        bad = freiman_violation(list(pts.points), image, 2)
        rep.output("image", [list(v) for v in image])
        rep.check("freiman_2_isomorphism", "violations", "==", "none" if bad is None else str(bad), bad is None)
        return
    else:
        raise UsageError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    rep.output("details", dict(ineq.details))
    rep.check(ineq.name, ineq.lhs, ">=", ineq.rhs, ineq.holds)


def cmd_merge(args, rep: Report) -> None:
    pf = _prog(rep, args.inp)
    if not isinstance(pf.P, ConvexProgression) or pf.Q is None:
        raise UsageError("merge needs a convexprog file with a box section")
    try:
        out = merge_step(pf.P, pf.Q, args.s, args.l0, args.budget)
    except NoClosePair as exc:
        rep.output("no_close_pair", True)
        rep.output("reason", str(exc))
        return
    rep.output("no_close_pair", False)
    rep.output("rho", list(out.rho))
    rep.output("m", out.m)
    rep.output("normal", list(out.normal))
    rep.output("P_new", _progression_dict(out.P_new))
    rep.output("Q_new", _box_dict(out.Q_new))
    rep.output("size_before", out.size_before)
    rep.output("size_after", out.size_after)
    rep.output("size_ratio", out.size_ratio)
    rep.output("checked_points", out.checked_points)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_progression(ProgressionFile(out.P_new, out.Q_new)))
    rep.check("containment", "P+Q", "subset", "P'+Q'", out.contained)
    rep.check("dimension_drop", out.P_new.d, "==", pf.P.d - 1, out.P_new.d == pf.P.d - 1)


def cmd_snap(args, rep: Report) -> None:
    X = _set(rep, args.inp)
    if not isinstance(X, PointSet):
        raise UsageError("snap takes a points file")
    cert = snap(list(X.points), _locality(args, X.k), args.s, args.budget)
    rep.output("snapped", [list(p) for p in cert.snapped])
    rep.output("adjustments", [list(p) for p in cert.f])
    rep.output("c", cert.c)
    rep.output("c_prime", cert.c_prime)
    rep.output("relations", [{"plus": list(r.plus), "minus": list(r.minus), "value": list(r.value)}
                             for r in cert.relations])
    rep.output("coefficients_in_bounds", cert.coefficients_in_bounds)
    rep.check("relations_exact", "sum x + f(x)", "==", "sum y + f(y)", cert.relations_exact)
    rep.check("adjustments_in_L", "f(x)", "in", f"{cert.c} L / {cert.c_prime}", cert.adjustments_in_L)
    rep.check("combination_certificate", "sum |c' w|", "<=", cert.c, cert.combination_certificate)


def cmd_ruzsa(args, rep: Report) -> None:
    A = _set(rep, args.inp)
    B = _set(rep, args.with_, "with")
    r = ruzsa_report(A, B)
    rep.output("X", [list(x) if isinstance(x, tuple) else x for x in r.X])
    rep.output("bound", r.bound)
    rep.check("covered", "A", "subset", "X+B-B", r.covered)
    rep.check("count", len(r.X), "<=", r.bound, r.ok)


def _instance_from_args(args, rep: Report) -> ExampleInstance:
    if args.inp:
        if not args.predictions:
            raise UsageError("--in needs --predictions FILE written by `example`")
        S = _set(rep, args.inp)
        meta = json.loads(_read(rep, args.predictions, "predictions").decode("utf-8"))
        preds = {k: Prediction(Fraction(v["value"]), v["source"], v.get("note", ""))
                 for k, v in meta["predicted"].items()}
        return ExampleInstance(meta["name"], meta["params"], S, preds)
    if not args.name:
        raise UsageError(f"give an example name ({', '.join(NAMES)}) or --in")
    return generate(args.name, **_params(args.params))


def cmd_example(args, rep: Report) -> None:
    inst = generate(args.name, **_params(args.params))
    rep.output("params", {k: v for k, v in inst.params.items()})
    rep.output("set", _set_summary(inst.set))
    for key, p in inst.predicted.items():
        rep.output(f"predicted.{key}", p.value)
    for key, v in inst.annotations.items():
        rep.output(f"annotation.{key}", v)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_set(inst.set))
    if args.predictions:
        meta = {"name": inst.name, "params": {k: str(v) for k, v in inst.params.items()},
                "predicted": {k: {"value": str(p.value), "source": p.source, "note": p.note}
                              for k, p in inst.predicted.items()}}
        with open(args.predictions, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(meta, sort_keys=True, indent=1) + "\n")


def cmd_verify_example(args, rep: Report) -> None:
    inst = _instance_from_args(args, rep)
    report = verify_example(inst)
    for row in report.rows:
        rep.check(f"{row.name} ({row.source})", row.actual, "==", row.predicted, row.match)


def cmd_suite(args, rep: Report) -> None:
    numbers = sorted(CRITERIA) if not args.only else [int(x) for x in args.only.split(",")]
    for n in numbers:
        if n not in CRITERIA:
            raise UsageError(f"no criterion {n}")
    rep.output("seed", args.seed)
    for n in numbers:
        res = run_criterion(n, args.seed)
        if not args.quiet:
            print(res.line(), file=sys.stderr, flush=True)
        rep.check(f"criterion_{n}: {res.title}", res.failures, "==", 0, res.passed)
        if res.detail:
            rep.output(f"criterion_{n}.detail", res.detail)
        rep.output(f"criterion_{n}.cases", res.cases)


COMMANDS = {
    "sumset": cmd_sumset, "doubling": cmd_doubling, "cover": cmd_cover, "hull": cmd_hull,
    "check": cmd_check, "merge": cmd_merge, "snap": cmd_snap, "ruzsa": cmd_ruzsa,
    "example": cmd_example, "verify-example": cmd_verify_example, "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumloc", description="Exact sumset, cover and locality computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--in", dest="inp", metavar="FILE")
        sp.add_argument("--budget", type=int, default=10 ** 7, metavar="N")
        return sp

    sp = add("sumset", "A+B (or the s-fold sumset of A)")
    sp.add_argument("--with", dest="with_", metavar="FILE")
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--out", metavar="FILE")
    add("doubling", "|A+A| / |A|")
    sp = add("cover", "minimum cover by t translates")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--symmetric", action="store_true")
    sp = add("hull", "hulls: lattice hull, co^{1,1} of a fibred set, or the additive part hull")
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--k", type=int)
    sp = add("check", "evaluate one named inequality")
    sp.add_argument("name", choices=CHECKS)
    sp.add_argument("--with", dest="with_", metavar="FILE")
    sp.add_argument("--prog", metavar="FILE")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--n", type=int)
    sp.add_argument("--values")
    sp.add_argument("--c")
    sp.add_argument("--N")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--l", type=int)
    sp = add("merge", "one merging step of a symmetric convex progression")
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--l0", type=int, default=1)
    sp.add_argument("--out", metavar="FILE")
    sp = add("snap", "snap near relations of a point set to exact ones")
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--radius", metavar="R")
    sp = add("ruzsa", "Ruzsa covering of A by translates of B-B")
    sp.add_argument("--with", dest="with_", metavar="FILE")
    for name in ("example", "verify-example"):
        sp = add(name, "generate an extremal example" if name == "example" else "recompute example statistics")
        sp.add_argument("name", nargs="?" if name == "verify-example" else None, choices=NAMES)
        sp.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
        sp.add_argument("--predictions", metavar="FILE")
        if name == "example":
            sp.add_argument("--out", metavar="FILE")
    sp = add("suite", "run the acceptance criteria")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--only", metavar="N,M")
    sp.add_argument("--quiet", action="store_true")
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, Optional[Report]]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    rep = Report(args.command, argv)
    try:
        code = COMMANDS[args.command](args, rep)
    except (UsageError, FormatError, ParameterError) as exc:
        print(f"sumloc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except BudgetExceeded as exc:
        rep.output("error", f"budget exceeded: {exc}")
        return EXIT_BUDGET, rep
    except (PreconditionError, LiftError, ValueError, TypeError, NotImplementedError) as exc:
        print(f"sumloc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    if code is None:
        code = EXIT_OK if rep.passed else EXIT_ASSERT
    return code, rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, rep = run(argv)
    if rep is not None:
        sys.stdout.write(rep.render(code))
    return code


if __name__ == "__main__":
    sys.exit(main())
