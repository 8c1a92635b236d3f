"""Named polynomial families as ordered products of generating-function atoms.

Each family is a product of atoms from :mod:`polydaehee.series`; its members
are n! times the x^n coefficients of that product.  Every atom is built at a
guarded internal order (its own division loss added back), so the delivered
coefficients are exact through the requested order; if anything still comes
up short the build raises instead of returning degraded members.

Tables are memoized on (atoms, requested order), which is sound because the
atom tuple fully determines the series product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Mapping, Optional

from . import series
from .coeffring import ETA, GAMMA, MultiPoly, Rational, rat
from .series import (EngineError, ParameterError, bernoulli_core, euler_core,
                     exp_linear, genocchi_core, log1p_over_polylog,
                     log1p_over_x, one_plus_pow, polylog_over_expm1,
                     polylog_over_log1p)


class UnknownFamilyError(ValueError):
    """Requested family name is not in the catalog."""


@dataclass(frozen=True)
class FamilyParams:
    """Parameters and symbol bindings shared by all family constructors.

    ``gamma`` binds the (1+x)^. slot and ``eta`` the exponential slot; either
    may be a symbol, another polynomial (e.g. a difference of symbols), or a
    constant.  Families read only the fields they use.
    """

    k: int = 1
    m: int = 1
    a: int = 1
    b: int = 0
    r: int = 1
    lam: Rational = field(default_factory=lambda: rat(1))
    gamma: MultiPoly = field(default_factory=lambda: GAMMA)
    eta: MultiPoly = field(default_factory=lambda: ETA)

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError("m must be a positive integer")
        if self.a < 0 or self.b < 0:
            raise ParameterError("a and b must be non-negative")
        if self.r < 0:
            raise ParameterError("r must be non-negative")


@dataclass(frozen=True)
class FamilySpec:
    """A family as an ordered, fully instantiated atom product."""

    name: str
    atoms: tuple
    params: FamilyParams

    def __post_init__(self):
        if not self.atoms:
            raise ParameterError("a family needs at least one atom")


@dataclass(frozen=True)
class FamilyTable:
    """Members P_0..P_order of one family."""

    spec: FamilySpec
    order: int
    members: tuple


def _b_daehee(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), log1p_over_x())


def _b_euler(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), euler_core(rat(1), 1))


def _b_euler_numbers(p: FamilyParams) -> tuple:
    return (euler_core(rat(1), 1),)


def _b_bernoulli(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), bernoulli_core(1, rat(1), 1))


def _b_poly_bernoulli(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), polylog_over_expm1(p.k))


def _b_poly_bernoulli_higher(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), polylog_over_expm1(p.k, power=p.r))


def _b_poly_daehee(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), log1p_over_polylog(p.k))


def _b_poly_bernoulli_2nd(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), polylog_over_log1p(p.k))


def _b_gen_bernoulli_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), bernoulli_core(1, rat(1), p.a))


def _b_gen_euler_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), euler_core(rat(1), p.a))


def _b_gen_genocchi_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), genocchi_core(rat(1), p.a))


def _b_apostol_bernoulli_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), bernoulli_core(1, p.lam, p.a))


def _b_apostol_euler_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), euler_core(p.lam, p.a))


def _b_apostol_genocchi_a(p: FamilyParams) -> tuple:
    return (exp_linear(p.gamma), genocchi_core(p.lam, p.a))


def _b_gen_apostol_bernoulli_m(p: FamilyParams) -> tuple:
    return (exp_linear(p.eta), bernoulli_core(p.m, p.lam, p.a))


def _b_gabpdp(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), log1p_over_polylog(p.k),
            exp_linear(p.eta), bernoulli_core(p.m, p.lam, p.a))


def _b_bernoulli_based_daehee(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), log1p_over_x(),
            exp_linear(p.eta), bernoulli_core(p.m, p.lam, p.a))


def _b_poly_daehee_two_param(p: FamilyParams) -> tuple:
    return (one_plus_pow(p.gamma), log1p_over_polylog(p.k), exp_linear(p.eta))


def _b_ab_poly_daehee(p: FamilyParams) -> tuple:
    return (bernoulli_core(1, p.lam, p.a), log1p_over_polylog(p.k),
            one_plus_pow(p.gamma), exp_linear(p.eta))


def _b_ae_poly_daehee(p: FamilyParams) -> tuple:
    return (euler_core(p.lam, p.a), log1p_over_polylog(p.k),
            one_plus_pow(p.gamma), exp_linear(p.eta))


def _b_ag_poly_daehee(p: FamilyParams) -> tuple:
    return (genocchi_core(p.lam, p.a), log1p_over_polylog(p.k),
            one_plus_pow(p.gamma), exp_linear(p.eta))


def _b_ab_daehee(p: FamilyParams) -> tuple:
    return (bernoulli_core(1, p.lam, p.a), log1p_over_x(),
            one_plus_pow(p.gamma), exp_linear(p.eta))


def _b_ae_daehee(p: FamilyParams) -> tuple:
    return (euler_core(p.lam, p.a), log1p_over_x(),
            one_plus_pow(p.gamma), exp_linear(p.eta))


def _b_ag_daehee(p: FamilyParams) -> tuple:
    return (genocchi_core(p.lam, p.a), log1p_over_x(),
            one_plus_pow(p.gamma), exp_linear(p.eta))


_BUILDERS: dict[str, Callable] = {
    "daehee": _b_daehee,
    "euler": _b_euler,
    "euler_numbers": _b_euler_numbers,
    "bernoulli": _b_bernoulli,
    "poly_bernoulli": _b_poly_bernoulli,
    "poly_bernoulli_higher": _b_poly_bernoulli_higher,
    "poly_daehee": _b_poly_daehee,
    "poly_bernoulli_2nd": _b_poly_bernoulli_2nd,
    "gen_bernoulli_a": _b_gen_bernoulli_a,
    "gen_euler_a": _b_gen_euler_a,
    "gen_genocchi_a": _b_gen_genocchi_a,
    "apostol_bernoulli_a": _b_apostol_bernoulli_a,
    "apostol_euler_a": _b_apostol_euler_a,
    "apostol_genocchi_a": _b_apostol_genocchi_a,
    "gen_apostol_bernoulli_m": _b_gen_apostol_bernoulli_m,
    "gabpdp": _b_gabpdp,
    "bernoulli_based_daehee": _b_bernoulli_based_daehee,
    "poly_daehee_two_param": _b_poly_daehee_two_param,
    "apostol_bernoulli_based_poly_daehee": _b_ab_poly_daehee,
    "apostol_euler_based_poly_daehee": _b_ae_poly_daehee,
    "apostol_genocchi_based_poly_daehee": _b_ag_poly_daehee,
    "apostol_bernoulli_based_daehee": _b_ab_daehee,
    "apostol_euler_based_daehee": _b_ae_daehee,
    "apostol_genocchi_based_daehee": _b_ag_daehee,
}

FAMILY_NAMES = tuple(_BUILDERS)


def normalize_family_name(name: str) -> str:
    return name.strip().lower().replace("-", "_")


def family_spec(name: str, params: Optional[FamilyParams] = None) -> FamilySpec:
    """Instantiate the named family's atom list with the given parameters."""
    key = normalize_family_name(name)
    builder = _BUILDERS.get(key)
    if builder is None:
        raise UnknownFamilyError(
            f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    params = params or FamilyParams()
    return FamilySpec(name=key, atoms=builder(params), params=params)


def family_catalog(params: Optional[FamilyParams] = None) -> list:
    """All families, instantiated with the given (or default) parameters."""
    params = params or FamilyParams()
    return [family_spec(name, params) for name in FAMILY_NAMES]


_TABLE_CACHE: dict = {}


def family_build(spec: FamilySpec, order: int) -> FamilyTable:
    """Members P_0..P_order, exact; raises EngineError rather than degrade."""
    if order < 0:
        raise ValueError("order must be non-negative")
    key = (spec.atoms, order)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return FamilyTable(spec=spec, order=order, members=hit)
    product = None
    for atom in spec.atoms:
        built = series.atom_build(atom, order)
        product = built if product is None else series.series_mul(product, built)
    if product.order < order:
        raise EngineError(
            f"internal truncation underflow: have order {product.order}, "
            f"need {order} (family {spec.name})")
    members = tuple(product.coeffs[n] * rat(factorial(n))
                    for n in range(order + 1))
    _TABLE_CACHE[key] = members
    return FamilyTable(spec=spec, order=order, members=members)


def family_member_eval(table: FamilyTable, n: int, at: Mapping) -> Rational:
    """Exact value of member n at a rational assignment."""
    if n < 0 or n > table.order:
        raise IndexError(f"member index {n} outside 0..{table.order}")
    return table.members[n].eval(at)


def clear_table_cache() -> None:
    _TABLE_CACHE.clear()
