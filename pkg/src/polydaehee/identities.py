"""Machine verification of the family identities as exact polynomial equalities.

Each verifier builds the family tables it needs, forms both sides of one
identity as polynomials in GAMMA, ETA, OMEGA, and compares them coefficient
by coefficient.  A report either passes or carries the first failing index
together with the two differing polynomials.  Symbol shifts on the left-hand
sides (gamma -> gamma+1, eta -> eta+omega, ...) are performed by exact
polynomial substitution on the table members, not by rebuilding the series
with shifted atoms; the test suite cross-checks the two routes on samples.

``run_suite`` drives all nine identity verifiers plus the five reduction
checks of the combined family over a parameter grid.  Failures (including
engine errors) become reports, never exceptions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import coeffring
from .coeffring import (ETA, GAMMA, OMEGA, MultiPoly, Symbol, binom,
                        linear_combination, rat, rat_str)
from .families import FamilyParams, FamilyTable, family_build, family_spec
from .series import rat_coerce

_ONE = MultiPoly.one()
_ZERO = MultiPoly.zero()

THEOREM_IDS = ("2.1", "2.2", "2.3", "2.4", "2.5", "3.1", "3.2", "3.3", "3.4")
REDUCTION_IDS = ("R1", "R2", "R3", "R4", "R5")
ALL_CHECK_IDS = THEOREM_IDS + REDUCTION_IDS


@dataclass
class IdentityReport:
    """Outcome of one identity check over one parameter point."""

    theorem_id: str
    params: dict
    status: str  # "pass" or "fail"
    first_fail: Optional[tuple] = None  # (index, lhs, rhs)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _table(name: str, order: int, **kwargs) -> FamilyTable:
    return family_build(family_spec(name, FamilyParams(**kwargs)), order)


def _report(tid: str, params: dict, fail=None, error=None) -> IdentityReport:
    if error is not None:
        return IdentityReport(tid, params, "fail", None, error)
    if fail is not None:
        return IdentityReport(tid, params, "fail", fail, None)
    return IdentityReport(tid, params, "pass", None, None)


def _first_mismatch(lhs_list, rhs_list):
    for n, (lhs, rhs) in enumerate(zip(lhs_list, rhs_list)):
        if lhs != rhs:
            return (n, lhs, rhs)
    return None


def verify_thm_2_1(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Combined members as a binomial convolution of the two factor families."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    left_factor = _table("poly_daehee", order, k=k)
    right_factor = _table("gen_apostol_bernoulli_m", order, m=m, a=a, lam=lam)
    for n in range(order + 1):
        rhs = linear_combination(
            (binom(n, j), left_factor.members[n - j] * right_factor.members[j])
            for j in range(n + 1))
        if combined.members[n] != rhs:
            return _report("2.1", params, fail=(n, combined.members[n], rhs))
    return _report("2.1", params)


def verify_thm_2_2(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Member n as the (n+1)-scaled forward difference in gamma at n+1."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    shift = {Symbol.GAMMA: GAMMA + _ONE}
    for n in range(order):
        nxt = combined.members[n + 1]
        rhs = (nxt.subst(shift) - nxt) * rat(1, n + 1)
        if combined.members[n] != rhs:
            return _report("2.2", params, fail=(n, combined.members[n], rhs))
    return _report("2.2", params)


def verify_thm_2_3(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Shift gamma by omega versus convolution with falling factorials."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    ff = [coeffring.falling_factorial(Symbol.OMEGA, j) for j in range(order + 1)]
    shift = {Symbol.GAMMA: GAMMA + OMEGA}
    for n in range(order + 1):
        lhs = combined.members[n].subst(shift)
        rhs = linear_combination(
            (binom(n, j), combined.members[n - j] * ff[j])
            for j in range(n + 1))
        if lhs != rhs:
            return _report("2.3", params, fail=(n, lhs, rhs))
    return _report("2.3", params)


def verify_thm_2_4(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Convolutions with poly-Bernoulli and Bernoulli numbers agree."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    zero = _ZERO
    poly_b = [mem.constant_value() for mem in
              _table("poly_bernoulli", order, k=k, gamma=zero).members]
    bern = [mem.constant_value() for mem in
            _table("bernoulli", order, gamma=zero).members]
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    logx = _table("bernoulli_based_daehee", order, m=m, a=a, lam=lam)
    for n in range(order + 1):
        lhs = linear_combination(
            (binom(n, j) * poly_b[j], combined.members[n - j])
            for j in range(n + 1))
        rhs = linear_combination(
            (binom(n, j) * bern[j], logx.members[n - j])
            for j in range(n + 1))
        if lhs != rhs:
            return _report("2.4", params, fail=(n, lhs, rhs))
    return _report("2.4", params)


def verify_thm_2_5(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Inverting the Daehee ratio: gamma must cancel from the convolution."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    target = _table("gen_apostol_bernoulli_m", order, m=m, a=a, lam=lam)
    second_kind = _table("poly_bernoulli_2nd", order, k=k, gamma=-GAMMA)
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    for n in range(order + 1):
        rhs = linear_combination(
            (binom(n, j), second_kind.members[j] * combined.members[n - j])
            for j in range(n + 1))
        if target.members[n] != rhs:
            return _report("2.5", params, fail=(n, target.members[n], rhs))
    return _report("2.5", params)


def verify_thm_3_1(k: int, m: int, a: int, lam, b_max: int,
                   c_max: int) -> IdentityReport:
    """Double-binomial shift of the exponential slot from omega back to eta."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam,
              "B": b_max, "C": c_max, "N": b_max + c_max}
    order = b_max + c_max
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    swapped = [mem.subst({Symbol.ETA: OMEGA}) for mem in combined.members]
    diff = ETA - OMEGA
    diff_pow = [_ONE]
    for _ in range(order):
        diff_pow.append(diff_pow[-1] * diff)
    prod_memo: dict = {}

    def weighted(r: int, t: int) -> MultiPoly:
        key = (r, t)
        if key not in prod_memo:
            prod_memo[key] = diff_pow[r] * swapped[t]
        return prod_memo[key]

    for b in range(b_max + 1):
        for c in range(c_max + 1):
            rhs = linear_combination(
                (binom(b, n) * binom(c, q), weighted(n + q, b + c - n - q))
                for n in range(b + 1) for q in range(c + 1))
            lhs = combined.members[b + c]
            if lhs != rhs:
                return _report("3.1", params, fail=(b + c, lhs, rhs))
    return _report("3.1", params)


def verify_thm_3_2(k: int, m: int, a: int, b: int, lam,
                   order: int) -> IdentityReport:
    """Splitting core power a+b and exponential slot eta+omega."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "b": b, "lam": lam, "N": order}
    base = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    lifted = _table("gabpdp", order, k=k, m=m, a=a + b, lam=lam)
    factor = _table("gen_apostol_bernoulli_m", order, m=m, a=b, lam=lam,
                    eta=OMEGA)
    shift = {Symbol.ETA: ETA + OMEGA}
    for n in range(order + 1):
        lhs = lifted.members[n].subst(shift)
        rhs = linear_combination(
            (binom(n, j), base.members[n - j] * factor.members[j])
            for j in range(n + 1))
        if lhs != rhs:
            return _report("3.2", params, fail=(n, lhs, rhs))
    return _report("3.2", params)


def verify_thm_3_3(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Core-free two-parameter factor at eta-omega times the core at omega."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    two_param = _table("poly_daehee_two_param", order, k=k, eta=ETA - OMEGA)
    factor = _table("gen_apostol_bernoulli_m", order, m=m, a=a, lam=lam,
                    eta=OMEGA)
    for n in range(order + 1):
        rhs = linear_combination(
            (binom(n, j), two_param.members[n - j] * factor.members[j])
            for j in range(n + 1))
        if combined.members[n] != rhs:
            return _report("3.3", params, fail=(n, combined.members[n], rhs))
    return _report("3.3", params)


def verify_thm_3_4(k: int, m: int, a: int, lam, order: int) -> IdentityReport:
    """Shifting the exponential slot by one equals the plain binomial sum."""
    lam = rat_coerce(lam)
    params = {"k": k, "m": m, "a": a, "lam": lam, "N": order}
    combined = _table("gabpdp", order, k=k, m=m, a=a, lam=lam)
    shift = {Symbol.ETA: ETA + _ONE}
    for n in range(order + 1):
        lhs = combined.members[n].subst(shift)
        rhs = linear_combination(
            (binom(n, j), combined.members[n - j]) for j in range(n + 1))
        if lhs != rhs:
            return _report("3.4", params, fail=(n, lhs, rhs))
    return _report("3.4", params)


def verify_reduction(case: int, k: int = 1, m: int = 1, a: int = 1, lam=1,
                     order: int = 12) -> IdentityReport:
    """Member-for-member equality of a specialization with its named family.

    Cases: 1 core order one; 2 additionally lambda=1 and a=1; 3 polylog index
    one collapses the ratio to log(1+x)/x; 4 power a=0 with the exponential
    slot at zero leaves the poly-Daehee factor; 5 both collapses at once
    leave the plain Daehee family.
    """
    lam = rat_coerce(lam)
    tid = f"R{case}"
    if case == 1:
        params = {"k": k, "m": 1, "a": a, "lam": lam, "N": order}
        lhs = _table("gabpdp", order, k=k, m=1, a=a, lam=lam)
        rhs = _table("apostol_bernoulli_based_poly_daehee", order,
                     k=k, a=a, lam=lam)
    elif case == 2:
        params = {"k": k, "m": 1, "a": 1, "lam": rat(1), "N": order}
        lhs = _table("gabpdp", order, k=k, m=1, a=1, lam=rat(1))
        rhs = _table("apostol_bernoulli_based_poly_daehee", order,
                     k=k, a=1, lam=rat(1))
    elif case == 3:
        params = {"k": 1, "m": 1, "a": a, "lam": lam, "N": order}
        lhs = _table("gabpdp", order, k=1, m=1, a=a, lam=lam)
        rhs = _table("bernoulli_based_daehee", order, m=1, a=a, lam=lam)
    elif case == 4:
        params = {"k": k, "m": m, "a": 0, "lam": lam, "N": order}
        lhs = _table("gabpdp", order, k=k, m=m, a=0, lam=lam, eta=_ZERO)
        rhs = _table("poly_daehee", order, k=k)
    elif case == 5:
        params = {"k": 1, "m": m, "a": 0, "lam": lam, "N": order}
        lhs = _table("gabpdp", order, k=1, m=m, a=0, lam=lam, eta=_ZERO)
        rhs = _table("daehee", order)
    else:
        raise ValueError(f"reduction case must be 1..5, got {case}")
    mismatch = _first_mismatch(lhs.members, rhs.members)
    return _report(tid, params, fail=mismatch)


# -- suite -------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteGrid:
    """Parameter grid the suite sweeps; axes are always iterated in order."""

    ks: tuple = (-2, -1, 0, 1, 2, 3)
    ms: tuple = (1, 2, 3)
    a_values: tuple = (0, 1, 2)
    b_values: tuple = (0, 1)
    lams: tuple = field(default_factory=lambda: (rat(1), rat(2),
                                                 rat(-3, 2), rat(1, 3)))
    order: int = 12
    checks: tuple = ALL_CHECK_IDS

    @property
    def bc(self) -> int:
        # shift caps for the double-binomial identity; table order is bc+bc
        return max(0, min(6, self.order // 2))


def default_grid(order: int = 12, checks: tuple = ALL_CHECK_IDS) -> SuiteGrid:
    return SuiteGrid(order=order, checks=checks)


def _guarded(make, tid: str, params: dict) -> IdentityReport:
    try:
        return make()
    except Exception as exc:  # failures are reports, not exceptions
        return _report(tid, params, error=f"{type(exc).__name__}: {exc}")


def run_suite(grid: SuiteGrid) -> list:
    """All requested checks over the grid, in deterministic order."""
    order = grid.order
    reports = []

    def theorem_points():
        for k in grid.ks:
            for m in grid.ms:
                for a in grid.a_values:
                    for lam in grid.lams:
                        yield k, m, a, lam

    if "2.1" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_2_1(k, m, a, lam, order), "2.1",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "2.2" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_2_2(k, m, a, lam, order), "2.2",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "2.3" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_2_3(k, m, a, lam, order), "2.3",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "2.4" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_2_4(k, m, a, lam, order), "2.4",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "2.5" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_2_5(k, m, a, lam, order), "2.5",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "3.1" in grid.checks:
        bc = grid.bc
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_3_1(k, m, a, lam, bc, bc), "3.1",
                {"k": k, "m": m, "a": a, "lam": lam, "B": bc, "C": bc,
                 "N": 2 * bc}))
    if "3.2" in grid.checks:
        for k, m, a, lam in theorem_points():
            for b in grid.b_values:
                reports.append(_guarded(
                    lambda: verify_thm_3_2(k, m, a, b, lam, order), "3.2",
                    {"k": k, "m": m, "a": a, "b": b, "lam": lam, "N": order}))
    if "3.3" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_3_3(k, m, a, lam, order), "3.3",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))
    if "3.4" in grid.checks:
        for k, m, a, lam in theorem_points():
            reports.append(_guarded(
                lambda: verify_thm_3_4(k, m, a, lam, order), "3.4",
                {"k": k, "m": m, "a": a, "lam": lam, "N": order}))

    if "R1" in grid.checks:
        for k in grid.ks:
            for a in grid.a_values:
                for lam in grid.lams:
                    reports.append(_guarded(
                        lambda: verify_reduction(1, k=k, a=a, lam=lam,
                                                 order=order), "R1",
                        {"k": k, "m": 1, "a": a, "lam": lam, "N": order}))
    if "R2" in grid.checks:
        for k in grid.ks:
            reports.append(_guarded(
                lambda: verify_reduction(2, k=k, order=order), "R2",
                {"k": k, "m": 1, "a": 1, "lam": rat(1), "N": order}))
    if "R3" in grid.checks:
        for a in grid.a_values:
            for lam in grid.lams:
                reports.append(_guarded(
                    lambda: verify_reduction(3, a=a, lam=lam, order=order),
                    "R3", {"k": 1, "m": 1, "a": a, "lam": lam, "N": order}))
    if "R4" in grid.checks:
        for k in grid.ks:
            for m in grid.ms:
                for lam in grid.lams:
                    reports.append(_guarded(
                        lambda: verify_reduction(4, k=k, m=m, lam=lam,
                                                 order=order), "R4",
                        {"k": k, "m": m, "a": 0, "lam": lam, "N": order}))
    if "R5" in grid.checks:
        for m in grid.ms:
            for lam in grid.lams:
                reports.append(_guarded(
                    lambda: verify_reduction(5, m=m, lam=lam, order=order),
                    "R5", {"k": 1, "m": m, "a": 0, "lam": lam, "N": order}))
    return reports


def suite_passed(reports) -> bool:
    return all(r.passed for r in reports)


def render_report(report: IdentityReport) -> str:
    """One-line form: THM <id> k=.. m=.. a=.. [b=..] λ=p/q N=..: PASS|FAIL."""
    p = report.params
    bits = [f"THM {report.theorem_id}"]
    for key in ("k", "m", "a", "b"):
        if key in p:
            bits.append(f"{key}={p[key]}")
    if "lam" in p:
        bits.append(f"λ={rat_str(p['lam'])}")
    if "N" in p:
        bits.append(f"N={p['N']}")
    if "B" in p:
        bits.append(f"B={p['B']} C={p['C']}")
    head = " ".join(bits)
    if report.passed:
        return f"{head}: PASS"
    if report.first_fail is not None:
        return f"{head}: FAIL n={report.first_fail[0]}"
    return f"{head}: FAIL error=\"{report.error}\""


def report_to_dict(report: IdentityReport) -> dict:
    params = {key: (rat_str(value) if key == "lam" else value)
              for key, value in report.params.items()}
    first_fail = None
    if report.first_fail is not None:
        n, lhs, rhs = report.first_fail
        first_fail = {"n": n, "lhs": str(lhs), "rhs": str(rhs)}
    return {"theorem": report.theorem_id, "params": params,
            "status": report.status, "first_fail": first_fail,
            "error": report.error}


def reports_to_json(reports) -> str:
    return json.dumps([report_to_dict(r) for r in reports], indent=2)
