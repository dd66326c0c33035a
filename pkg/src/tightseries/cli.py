"""Command-line front end.

Element literals use 1-based points, ``[1->3, 2->4]`` or ``0``, and products
read right to left: ``a*b`` applies ``b`` first.  Exit status is 0 for a
passing or informational report, 1 for a failing one, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .enumeration import DEFAULT_BUDGET, enumerate_inverse_semigroup, stratify_by_rank
from .errors import (BudgetExceededError, InvalidRankError, InvalidSeriesError, NotRegularError,
                     ParseError, PreconditionError, TruncationError)
from .green import compose_relations, compute_green, factorization_witness
from .ideals import inverse_rank_series, rank_series, tightness_report, verify_ideal_series
from .pinj import compose, parse
from .products import fiber_sizes, product_series, pullback_series
from .pt import BlockStructure, check_regular, enumerate_pt, fiber_formula, index_homomorphism
from .report import Report
from .topology import build_cover_theorem12, verify_example5, verify_example6


class UsageError(Exception):
    pass


def _blocks(text: str) -> BlockStructure:
    try:
        return BlockStructure(tuple(int(b) for b in text.split(",")))
    except ValueError:
        raise UsageError(f"malformed block sizes {text!r}; expected e.g. 2,2") from None


def _series_from_spec(spec: str, budget: int):
    """``I:m:n`` (rank series of I_m^n) or ``PT:b1,b2,...:n``."""
    parts = spec.split(":")
    try:
        if parts[0] == "I" and len(parts) == 3:
            m, n = int(parts[1]), int(parts[2])
            return inverse_rank_series(m, n)
        if parts[0] == "PT" and len(parts) == 3:
            return rank_series(enumerate_pt(_blocks(parts[1]), int(parts[2]), budget=budget))
    except ValueError as exc:
        if isinstance(exc, (InvalidRankError, InvalidSeriesError)):
            raise
        raise UsageError(f"malformed series specifier {spec!r}") from None
    raise UsageError(f"malformed series specifier {spec!r}; use I:m:n or PT:b1,b2:n")


def _series_payload(series, report):
    return {
        "label": series.label,
        "levels": [len(level) for level in series.chain],
        "passed": report.passed,
        "checks": [{"level": lc.level, "size": lc.size, "is_ideal": lc.is_ideal,
                    "included": lc.included} for lc in report.levels],
    }


def _series_witnesses(report):
    out = [{"level": lc.level, **lc.witness} for lc in report.levels if lc.witness]
    if not report.top_is_ambient:
        out.append({"check": "top level equals ambient", "holds": False})
    return out


def cmd_enum(args) -> Report:
    s = enumerate_inverse_semigroup(args.ground, args.rank, budget=args.budget)
    strata = stratify_by_rank(s)
    payload = {"ground": args.ground, "rank": args.rank, "size": len(s),
               "strata": [len(st) for st in strata], "elements": list(s)}
    return Report("enum", "info", payload)


def cmd_green(args) -> Report:
    if args.blocks:
        s = enumerate_pt(_blocks(args.blocks), args.rank, budget=args.budget)
    else:
        s = enumerate_inverse_semigroup(args.ground, args.rank, budget=args.budget)
    g = compute_green(s)
    L, R = g.relation("L"), g.relation("R")
    lr, rl = compose_relations(L, R), compose_relations(R, L)
    commute = bool((lr == rl).all())
    d_is_lr = bool((lr == g.relation("D")).all())
    classes = []
    for summary, members in zip(g.egg_box(), g.d_classes):
        ranks = sorted({s[i].rank for i in members})
        classes.append({"size": summary.size, "L": summary.l_count, "R": summary.r_count,
                        "H": summary.h_size, "regular": summary.regular,
                        "idempotents": summary.idempotents, "ranks": ranks,
                        "representative": s[members[0]]})
    payload = {"semigroup": s.label, "size": len(s), "d_classes": classes,
               "L_R_commute": commute, "D_equals_L_R": d_is_lr}
    if commute and d_is_lr:
        return Report("green", "pass", payload)
    bad = np.argwhere(lr != rl)[0] if not commute else np.argwhere(lr != g.relation("D"))[0]
    return Report("green", "fail", payload, [{"x": s[bad[0]], "y": s[bad[1]]}])


def cmd_tight_cert(args) -> Report:
    series = inverse_rank_series(args.ground, args.rank)
    verification = verify_ideal_series(series)
    if not verification.passed:
        return Report("tight-cert", "fail", _series_payload(series, verification),
                      _series_witnesses(verification))
    levels = [args.level] if args.level is not None else None
    rep = tightness_report(series, levels=levels, threads=args.threads)
    payload = {
        "ground": args.ground, "rank": args.rank,
        "levels": [{"level": lv.level, "size": lv.size, "max_count": lv.max_count,
                    "bound": lv.bound, "argmax": lv.argmax} for lv in rep.levels],
        "maxima": rep.maxima,
        "finitely_tight": rep.finitely_tight,
        "bound_attained": rep.bound_attained,
        "i0_size": rep.i0_size,
        "note": rep.note,
    }
    if rep.finitely_tight:
        return Report("tight-cert", "pass", payload)
    wit = [{"level": lv.level, "element": lv.argmax, "count": lv.max_count, "bound": lv.bound}
           for lv in rep.levels if not lv.within_bound]
    return Report("tight-cert", "fail", payload, wit)


def cmd_series(args) -> Report:
    if args.action == "product":
        if not (args.left and args.right):
            raise UsageError("series product needs --left and --right")
        sA, sB = _series_from_spec(args.left, args.budget), _series_from_spec(args.right, args.budget)
        out = product_series(sA, sB)
        sides = {"left": tightness_report(sA).maxima, "right": tightness_report(sB).maxima}
    else:
        if not args.blocks:
            raise UsageError("series pullback needs --blocks")
        structure = _blocks(args.blocks)
        h = index_homomorphism(structure, args.rank)
        target = rank_series(h.target)
        out = pullback_series(h, target)
        sides = {"target": tightness_report(target).maxima}
    rep = verify_ideal_series(out)
    payload = _series_payload(out, rep)
    if rep.passed:
        tr = tightness_report(out)
        payload["maxima"] = tr.maxima
        payload["bounds"] = list(out.bounds) if out.bounds is not None else None
        payload["inputs"] = sides
        if args.action == "pullback":
            payload["bound_note"] = "bound = target max count * (max fiber size)^2 (heuristic)"
        return Report(f"series {args.action}", "pass", payload)
    return Report(f"series {args.action}", "fail", payload, _series_witnesses(rep))


def cmd_pt(args) -> Report:
    structure = _blocks(args.blocks)
    s = enumerate_pt(structure, args.rank, budget=args.budget)
    h = index_homomorphism(structure, args.rank, source=s)
    fibers = fiber_sizes(h)
    table = [{"alpha": alpha, "fiber": size, "formula": fiber_formula(structure, alpha)}
             for alpha, size in fibers.items()]
    regular = check_regular(s)
    series_rep = verify_ideal_series(rank_series(s))
    formula_ok = all(row["fiber"] == row["formula"] for row in table)
    payload = {"blocks": list(structure.block_sizes), "rank": args.rank, "size": len(s),
               "homomorphism": "multiplicative, surjective", "fibers": table,
               "fiber_formula_holds": formula_ok, "regular": regular.regular,
               "rank_series_verified": series_rep.passed}
    if args.elements:
        payload["elements"] = list(s)
    witnesses = [{"non_regular": x} for x in regular.non_regular]
    witnesses += [{"fiber_mismatch": row} for row in table if row["fiber"] != row["formula"]]
    witnesses += _series_witnesses(series_rep)
    if witnesses:
        return Report("pt", "fail", payload, witnesses)
    return Report("pt", "pass", payload)


def cmd_factorize(args) -> Report:
    m = args.ground
    n = m if args.rank is None else args.rank
    a, c = parse(args.a, m), parse(args.c, m)
    s = enumerate_inverse_semigroup(m, n, budget=args.budget)
    for x in (a, c):
        if x not in s:
            raise UsageError(f"{x} has rank above {n}")
    w = factorization_witness(a, c, compute_green(s))
    product = compose(compose(w.s, a), w.t)
    payload = {"a": a, "c": c, "s": w.s, "t": w.t, "s*a*t": product,
               "steps": {"b": w.b, "e": w.e, "u": w.u, "f": w.f, "v": w.v}}
    if product == c:
        return Report("factorize", "pass", payload)
    return Report("factorize", "fail", payload, [{"s*a*t": product, "expected": c}])


def cmd_topo(args) -> Report:
    enlarge = not args.no_enlarge
    if args.which == "ex5":
        rep = verify_example5(args.trunc, args.rank, args.n_max, enlarge=enlarge)
    elif args.which == "ex6":
        if not args.chi:
            raise UsageError("topo ex6 needs --chi")
        rep = verify_example6(args.trunc, parse(args.chi, args.trunc), args.extra_rank, enlarge=enlarge)
    else:
        rep = build_cover_theorem12(args.trunc, args.chain, enlarge=enlarge)
        payload = {"N": rep.N, "K_max": rep.K_max, "checks": rep.checks,
                   "piece_sizes": rep.piece_sizes, "remainder_size": rep.remainder_size,
                   "universe_size": rep.universe_size, "subfamilies_checked": rep.subfamilies_checked,
                   "stable_under_enlargement": rep.stable_under_enlargement,
                   "witness_sample": rep.witnesses[:8]}
        if rep.passed:
            return Report("topo cover", "pass", payload)
        wit = rep.violations or [{"check": "stable_under_enlargement", "holds": False}]
        return Report("topo cover", "fail", payload, wit)
    payload = {"N": rep.N, "checks": rep.checks, "details": rep.details,
               "stable_under_enlargement": rep.stable_under_enlargement}
    if rep.enlarged is not None:
        payload["enlarged"] = {"N": rep.enlarged.N, "checks": rep.enlarged.checks}
    if rep.passed:
        return Report(f"topo {args.which}", "pass", payload)
    wit = rep.violations or [{"check": "stable_under_enlargement", "holds": False}]
    return Report(f"topo {args.which}", "fail", payload, wit)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="element budget")

    p = argparse.ArgumentParser(prog="tightseries", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("enum", parents=[common], help="list I_m^n")
    q.add_argument("--ground", type=int, required=True)
    q.add_argument("--rank", type=int, required=True)
    q.set_defaults(func=cmd_enum)

    q = sub.add_parser("green", parents=[common], help="egg-box summary of Green's relations")
    q.add_argument("--ground", type=int)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--blocks", help="use PT with these block sizes instead of I_m^n")
    q.set_defaults(func=cmd_green)

    q = sub.add_parser("tight-cert", parents=[common], help="stabilizer certificate of the rank series")
    q.add_argument("--ground", type=int, required=True)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--level", type=int)
    q.set_defaults(func=cmd_tight_cert)

    q = sub.add_parser("series", parents=[common], help="product or pullback of ideal series")
    q.add_argument("action", choices=["product", "pullback"])
    q.add_argument("--left", help="I:m:n or PT:b1,b2:n")
    q.add_argument("--right", help="I:m:n or PT:b1,b2:n")
    q.add_argument("--blocks", help="block sizes for the pullback along the index map")
    q.add_argument("--rank", type=int, default=1)
    q.set_defaults(func=cmd_series)

    q = sub.add_parser("pt", parents=[common], help="block-respecting partial functions")
    q.add_argument("--blocks", required=True)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--elements", action="store_true", help="dump every element")
    q.set_defaults(func=cmd_pt)

    q = sub.add_parser("factorize", parents=[common], help="write c = s*a*t inside a D-class")
    q.add_argument("--ground", type=int, required=True)
    q.add_argument("--rank", type=int)
    q.add_argument("--a", required=True)
    q.add_argument("--c", required=True)
    q.set_defaults(func=cmd_factorize)

    q = sub.add_parser("topo", parents=[common], help="neighbourhood-base checks")
    q.add_argument("which", choices=["ex5", "ex6", "cover"])
    q.add_argument("--trunc", type=int, required=True, help="carrier size N")
    q.add_argument("--rank", type=int, default=1)
    q.add_argument("--n-max", type=int)
    q.add_argument("--chi")
    q.add_argument("--extra-rank", type=int, default=1)
    q.add_argument("--chain", type=int, default=8)
    q.add_argument("--no-enlarge", action="store_true", help="skip the re-run at 2N")
    q.set_defaults(func=cmd_topo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "green" and args.ground is None and not args.blocks:
        parser.error("green needs --ground or --blocks")
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        report = args.func(args)
    except (UsageError, ParseError, InvalidRankError, InvalidSeriesError, PreconditionError,
            NotRegularError, TruncationError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
