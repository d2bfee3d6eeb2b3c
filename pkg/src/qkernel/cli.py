"""Command-line interface: ``qkernel <command> ...``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .dsl import DSLSyntaxError, UnknownGenerator, format_expr, parse
from .presentations import NAMES, UnknownPresentation, get_presentation
from .rewrite import StepLimitExceeded, check_identity, local_confluence_report, normal_form


def _normalize(args) -> int:
    p = get_presentation(args.alg)
    x = normal_form(parse(args.expr, args.alg), p)
    print(format_expr(x, args.style))
    return 0


def _check(args) -> int:
    text = " ".join(args.identity)
    lhs, sep, rhs = text.partition("==")
    if not sep:
        print("error: expected '<lhs> == <rhs>'", file=sys.stderr)
        return 2
    p = get_presentation(args.alg)
    res = check_identity(parse(lhs, args.alg), parse(rhs, args.alg), p)
    if res.holds:
        print("holds")
        return 0
    print(f"fails; residual: {format_expr(res.residual)}")
    return 1


def _suite(args) -> int:
    from .suite import run_suite
    report = run_suite(args.filter, args.json, inject_corrupted=args.inject_corrupted)
    for r in report.records:
        line = f"{r.status.upper():5} {r.id}"
        if r.residual:
            line += f"  [{r.residual}]"
        print(line)
    c = report.counts()
    print(f"{len(report.records)} records: {c['pass']} pass, {c['fail']} fail, {c['error']} error")
    return report.exit_code


def _rep(args) -> int:
    from .reps import finite_matrix
    x = parse(args.matrix, "ospq")
    m = finite_matrix(x, args.N, args.e)
    s_value = Fraction(args.eval_s) if args.eval_s is not None else None
    print(m.to_json(s_value))
    return 0


def _limits(args) -> int:
    from .catalog import q_limit_check
    ok = True
    for family in ("qbi_relations", "qbi_casimir", "structure_constants"):
        r = q_limit_check(family)
        ok &= r.passed
        print(f"{'PASS' if r.passed else 'FAIL'} {family}")
        for e in r.entries:
            if family != "structure_constants" or e.status == "pole":
                print(f"  {e.label}: {e.status}" + (f"  [{e.detail}]" if e.status not in ("zero", "finite") else ""))
    return 0 if ok else 1


def _confluence(args) -> int:
    p = get_presentation(args.alg)
    report = local_confluence_report(p)
    for cp in report:
        print(f"{'joinable' if cp.joinable else 'NOT joinable':12} {'*'.join(cp.overlap)}")
        if not cp.joinable:
            print(f"  branch 1: {format_expr(cp.branch1)}")
            print(f"  branch 2: {format_expr(cp.branch2)}")
    bad = sum(not cp.joinable for cp in report)
    print(f"{len(report)} critical pairs, {bad} not joinable")
    return 1 if bad else 0


def _sign(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("e must be +1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qkernel", description="Exact computations in osp_q(1|2) and related algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    alg_help = f"presentation name ({', '.join(NAMES)}) or a presentation file"

    p = sub.add_parser("normalize", help="print the normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--alg", default="ospq", help=alg_help)
    p.add_argument("--style", choices=("canonical", "latex"), default="canonical")
    p.set_defaults(func=_normalize)

    p = sub.add_parser("check", help="decide an identity '<lhs> == <rhs>'")
    p.add_argument("identity", nargs="+")
    p.add_argument("--alg", default="ospq", help=alg_help)
    p.set_defaults(func=_check)

    p = sub.add_parser("suite", help="run the identity suite")
    p.add_argument("--filter", default="*", help="glob over record ids")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--inject-corrupted", action="store_true",
                   help="add a record built on a wrong rule (expected to fail)")
    p.set_defaults(func=_suite)

    p = sub.add_parser("rep", help="matrix of an expression in a finite representation")
    p.add_argument("--N", type=int, required=True, help="even truncation size; dimension N+1")
    p.add_argument("--e", type=_sign, default=1)
    p.add_argument("--matrix", required=True, metavar="EXPR")
    p.add_argument("--eval-s", metavar="RATIONAL", help="evaluate entries at this value of s")
    p.set_defaults(func=_rep)

    p = sub.add_parser("limits", help="q -> 1 limit checks")
    p.set_defaults(func=_limits)

    p = sub.add_parser("confluence", help="local confluence report of a presentation")
    p.add_argument("--alg", default="ospq", help=alg_help)
    p.set_defaults(func=_confluence)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DSLSyntaxError, UnknownGenerator, UnknownPresentation, StepLimitExceeded,
            ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
