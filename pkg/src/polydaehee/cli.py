"""Command-line front end: family tables, member evaluation, identity suite.

Exit codes: 0 success (and all checks passed), 1 at least one verification
failure, 2 usage or parameter error.  Output is deterministic: identical
invocations produce byte-identical output.  Rationals are written and read
as 'p/q' (or a bare integer); decimals are rejected because every result is
exact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import families, identities
from .coeffring import MultiPoly, Symbol, rat_from_str, rat_str
from .families import FamilyParams, UnknownFamilyError, family_build, family_spec
from .series import ParameterError

MAX_ORDER = 64

_LATEX_NAMES = ("\\gamma", "\\eta", "\\omega")


class UsageError(Exception):
    """Invalid command-line input; maps to exit code 2."""


def _parse_rat(text: str):
    try:
        return rat_from_str(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_order(order: int) -> int:
    if order < 0 or order > MAX_ORDER:
        raise UsageError(f"order must be between 0 and {MAX_ORDER}")
    return order


def _check_threads() -> None:
    raw = os.environ.get("POLYDAEHEE_THREADS")
    if raw is None:
        return
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise UsageError("POLYDAEHEE_THREADS must be a positive integer")


def _family_params(args) -> FamilyParams:
    kwargs = {}
    if getattr(args, "k", None) is not None:
        kwargs["k"] = args.k
    if getattr(args, "m", None) is not None:
        kwargs["m"] = args.m
    if getattr(args, "a", None) is not None:
        kwargs["a"] = args.a
    if getattr(args, "b", None) is not None:
        kwargs["b"] = args.b
    if getattr(args, "r", None) is not None:
        kwargs["r"] = args.r
    if getattr(args, "lam", None) is not None:
        kwargs["lam"] = _parse_rat(args.lam)
    if getattr(args, "gamma", None) is not None:
        kwargs["gamma"] = MultiPoly.const(_parse_rat(args.gamma))
    if getattr(args, "eta", None) is not None:
        kwargs["eta"] = MultiPoly.const(_parse_rat(args.eta))
    return FamilyParams(**kwargs)


def _latex_poly(poly: MultiPoly) -> str:
    if not poly:
        return "0"
    pieces = []
    for exps, coeff in poly.sorted_terms():
        mono = " ".join(
            f"{_LATEX_NAMES[i]}^{{{exps[i]}}}" if exps[i] > 1 else _LATEX_NAMES[i]
            for i in range(3) if exps[i])
        neg = coeff < 0
        mag = -coeff if neg else coeff
        num, den = int(mag.numerator), int(mag.denominator)
        if den != 1:
            scalar = f"\\frac{{{num}}}{{{den}}}"
        else:
            scalar = str(num)
        if not mono:
            body = scalar
        elif mag == 1:
            body = mono
        else:
            body = f"{scalar} {mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def _table_json_obj(table) -> dict:
    p = table.spec.params
    members = []
    for n, member in enumerate(table.members):
        terms = [{"e_gamma": e[0], "e_eta": e[1], "e_omega": e[2],
                  "coeff": rat_str(c)} for e, c in member.sorted_terms()]
        members.append({"n": n, "terms": terms})
    return {"family": table.spec.name,
            "params": {"k": p.k, "m": p.m, "a": p.a, "lambda": rat_str(p.lam)},
            "order": table.order,
            "members": members}


def table_from_json(text: str):
    """Re-parse `table --format json` output into member polynomials."""
    obj = json.loads(text)
    members = []
    for entry in obj["members"]:
        terms = {(t["e_gamma"], t["e_eta"], t["e_omega"]):
                 rat_from_str(t["coeff"]) for t in entry["terms"]}
        members.append(MultiPoly(terms))
    return obj, members


def _render_table(table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_table_json_obj(table), indent=2) + "\n"
    if fmt == "csv":
        return "".join(f"{n},{member}\n"
                       for n, member in enumerate(table.members))
    if fmt == "latex":
        return "".join(f"\\(P_{{{n}}} = {_latex_poly(member)}\\)\n"
                       for n, member in enumerate(table.members))
    p = table.spec.params
    head = (f"# family={table.spec.name} k={p.k} m={p.m} a={p.a} "
            f"lambda={rat_str(p.lam)} order={table.order}\n")
    body = "".join(f"P_{n} = {member}\n"
                   for n, member in enumerate(table.members))
    return head + body


def cmd_table(args) -> tuple:
    order = _check_order(args.order)
    params = _family_params(args)
    spec = family_spec(args.family, params)
    table = family_build(spec, order)
    return _render_table(table, args.format), 0


def cmd_eval(args) -> tuple:
    n = args.n
    order = args.order if args.order is not None else n
    _check_order(order)
    if n < 0 or n > order:
        raise UsageError(f"member index n={n} must satisfy 0 <= n <= order={order}")
    params = _family_params(args)
    table = family_build(family_spec(args.family, params), order)
    assignment = {}
    for sym, flag in ((Symbol.GAMMA, args.at_gamma), (Symbol.ETA, args.at_eta),
                      (Symbol.OMEGA, args.at_omega)):
        if flag is not None:
            assignment[sym] = _parse_rat(flag)
    try:
        value = families.family_member_eval(table, n, assignment)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rat_str(value) + "\n", 0


def _restricted_grid(args) -> identities.SuiteGrid:
    base = identities.default_grid(order=_check_order(args.order))
    kwargs = {"order": base.order}
    kwargs["ks"] = (args.k,) if args.k is not None else base.ks
    kwargs["ms"] = (args.m,) if args.m is not None else base.ms
    kwargs["a_values"] = (args.a,) if args.a is not None else base.a_values
    kwargs["b_values"] = (args.b,) if args.b is not None else base.b_values
    if args.lam is not None:
        kwargs["lams"] = (_parse_rat(args.lam),)
    if args.theorem is not None:
        wanted = tuple(t for t in identities.ALL_CHECK_IDS
                       if t in args.theorem)
        if not wanted:
            raise UsageError(
                f"unknown check id(s) {args.theorem}; "
                f"known: {', '.join(identities.ALL_CHECK_IDS)}")
        kwargs["checks"] = wanted
    return identities.SuiteGrid(**kwargs)


_FAMILY_CHECKS = {
    "gabpdp": identities.ALL_CHECK_IDS,
    "poly_daehee": ("2.1", "R4"),
    "gen_apostol_bernoulli_m": ("2.1", "2.5", "3.2", "3.3"),
    "poly_bernoulli": ("2.4",),
    "bernoulli": ("2.4",),
    "bernoulli_based_daehee": ("2.4", "R3"),
    "poly_bernoulli_2nd": ("2.5",),
    "poly_daehee_two_param": ("3.3",),
    "apostol_bernoulli_based_poly_daehee": ("R1", "R2"),
    "daehee": ("R5",),
}


def cmd_verify(args) -> tuple:
    # constructing the spec validates family/lambda combinations up front
    if args.family is not None:
        params = _family_params(args)
        spec = family_spec(args.family, params)
        involved = _FAMILY_CHECKS.get(spec.name, ())
    grid = _restricted_grid(args)
    if args.family is not None:
        checks = tuple(c for c in grid.checks if c in involved)
        grid = identities.SuiteGrid(
            ks=grid.ks, ms=grid.ms, a_values=grid.a_values,
            b_values=grid.b_values, lams=grid.lams, order=grid.order,
            checks=checks)
    reports = identities.run_suite(grid)
    if not reports:
        raise UsageError("no suite checks match the requested restriction")
    passed = sum(1 for r in reports if r.passed)
    if args.format == "json":
        out = identities.reports_to_json(reports) + "\n"
    else:
        lines = [identities.render_report(r) for r in reports]
        lines.append(f"PASSED {passed}/{len(reports)}")
        out = "\n".join(lines) + "\n"
    return out, (0 if passed == len(reports) else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polydaehee",
        description="Exact tables, evaluations, and identity verification "
                    "for Daehee / Bernoulli / Euler / Genocchi polynomial "
                    "families and their Apostol combinations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_flags(p, with_bindings: bool):
        p.add_argument("--family", required=True, help="family name")
        p.add_argument("--k", type=int, help="polylogarithm index")
        p.add_argument("--m", type=int, help="core order (positive)")
        p.add_argument("--a", type=int, help="core power (non-negative)")
        p.add_argument("--b", type=int, help="second core power")
        p.add_argument("--r", type=int, help="outer power for higher-order families")
        p.add_argument("--lambda", dest="lam", metavar="P/Q",
                       help="deformation parameter, rational p/q "
                            "(spell negative fractions as --lambda=-3/2)")
        if with_bindings:
            p.add_argument("--gamma", metavar="P/Q",
                           help="bind the binomial slot to a constant")
            p.add_argument("--eta", metavar="P/Q",
                           help="bind the exponential slot to a constant")

    p_table = sub.add_parser("table", help="emit members P_0..P_order")
    add_family_flags(p_table, with_bindings=True)
    p_table.add_argument("--order", type=int, required=True)
    p_table.add_argument("--format", choices=("text", "csv", "json", "latex"),
                         default="text")
    p_table.add_argument("--output", help="write to this file instead of stdout")

    p_eval = sub.add_parser("eval", help="evaluate one member exactly")
    add_family_flags(p_eval, with_bindings=False)
    p_eval.add_argument("--n", type=int, required=True, help="member index")
    p_eval.add_argument("--order", type=int, help="table order (default n)")
    p_eval.add_argument("--gamma", dest="at_gamma", metavar="P/Q",
                        help="value for the gamma symbol")
    p_eval.add_argument("--eta", dest="at_eta", metavar="P/Q",
                        help="value for the eta symbol")
    p_eval.add_argument("--omega", dest="at_omega", metavar="P/Q",
                        help="value for the omega symbol")
    p_eval.add_argument("--output", help="write to this file instead of stdout")

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("--order", type=int, default=12)
    p_verify.add_argument("--theorem", action="append",
                          help="restrict to one check id (repeatable), "
                               "e.g. 2.3 or R4")
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--m", type=int)
    p_verify.add_argument("--a", type=int)
    p_verify.add_argument("--b", type=int)
    p_verify.add_argument("--lambda", dest="lam", metavar="P/Q")
    p_verify.add_argument("--family",
                          help="validate parameters for this family and "
                               "restrict the suite to checks involving it")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--output", help="write to this file instead of stdout")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_threads()
        if args.command == "table":
            out, code = cmd_table(args)
        elif args.command == "eval":
            out, code = cmd_eval(args)
        else:
            out, code = cmd_verify(args)
    except (UsageError, UnknownFamilyError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(out)
    else:
        sys.stdout.write(out)
    return code


def cli_entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    cli_entry()
