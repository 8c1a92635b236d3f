"""Truncated formal power series in x over the three-symbol polynomial ring.

A ``Series`` stores coefficients 0..order inclusive; ``order`` is the
truncation order.  Every arithmetic result carries the minimum order of its
operands, and division additionally subtracts the divisor's valuation, so a
coefficient is stored only when it is exactly the coefficient of the
untruncated result.  Nothing here is approximate.

Atoms are the closed-form series every polynomial family is assembled from:
binomial series (1+x)^e, exponentials, log(1+x) and its ratios with the
polylogarithm of 1-exp(-x), and the Apostol-Bernoulli / Euler / Genocchi
core factors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence

from . import coeffring
from .coeffring import MultiPoly, Rational, as_poly, rat


class ParameterError(ValueError):
    """A constructor parameter is outside its legal domain."""


class EngineError(RuntimeError):
    """Truncation bookkeeping came up short; no degraded result is returned."""


@dataclass(frozen=True)
class Series:
    """Truncated series; coeffs[n] is the coefficient of x^n."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Series[{body}; O(x^{self.order + 1})]"


def series_make(order: int, coeffs: Sequence) -> Series:
    """Series of the given order; len(coeffs) must be order+1."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if len(coeffs) != order + 1:
        raise ValueError(
            f"need {order + 1} coefficients for order {order}, got {len(coeffs)}")
    return Series(tuple(as_poly(c) for c in coeffs))


def zero_series(order: int) -> Series:
    return Series((MultiPoly.zero(),) * (order + 1))


def one_series(order: int) -> Series:
    return Series((MultiPoly.one(),) + (MultiPoly.zero(),) * order)


def const_series(value, order: int) -> Series:
    return Series((as_poly(value),) + (MultiPoly.zero(),) * order)


def x_power_series(j: int, order: int) -> Series:
    coeffs = [MultiPoly.zero()] * (order + 1)
    if j <= order:
        coeffs[j] = MultiPoly.one()
    return Series(tuple(coeffs))


def val(f: Series) -> Optional[int]:
    """Index of the first nonzero coefficient; None if zero up to order."""
    for n, c in enumerate(f.coeffs):
        if c:
            return n
    return None


def series_add(f: Series, g: Series) -> Series:
    n_out = min(f.order, g.order)
    return Series(tuple(f.coeffs[n] + g.coeffs[n] for n in range(n_out + 1)))


def series_mul(f: Series, g: Series) -> Series:
    """Cauchy product, truncated at the smaller operand order."""
    n_out = min(f.order, g.order)
    fi = [c._terms for c in f.coeffs]
    gi = [c._terms for c in g.coeffs]
    out = []
    for n in range(n_out + 1):
        acc: dict = {}
        for i in range(n + 1):
            a = fi[i]
            b = gi[n - i]
            if not a or not b:
                continue
            if len(a) > len(b):
                a, b = b, a
            for ea, ca in a.items():
                for eb, cb in b.items():
                    key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                    prev = acc.get(key)
                    newv = ca * cb if prev is None else prev + ca * cb
                    if newv:
                        acc[key] = newv
                    elif prev is not None:
                        del acc[key]
        out.append(MultiPoly._raw(acc))
    return Series(tuple(out))


def series_div(f: Series, g: Series) -> Series:
    """Exact quotient h with f = g*h up to order min(f.order,g.order) - val(g).

    The divisor's leading coefficient must be a nonzero rational constant;
    f must vanish at least as fast as g.
    """
    v = val(g)
    if v is None:
        raise ZeroDivisionError("zero divisor (divisor vanishes up to its order)")
    lead = g.coeffs[v]
    if not lead.is_constant():
        raise ValueError(f"non-constant unit: leading coefficient {lead}")
    for i in range(min(v, f.order + 1)):
        if f.coeffs[i]:
            raise ValueError(
                f"valuation mismatch: dividend has x^{i}, divisor starts at x^{v}")
    n_out = min(f.order, g.order) - v
    if n_out < 0:
        raise ValueError("truncation order too small for this division")
    inv = rat(1) / lead.constant_value()
    fs = f.coeffs[v:]
    gs = [c._terms for c in g.coeffs[v:]]
    out: list = []
    for n in range(n_out + 1):
        acc: dict = dict(fs[n]._terms) if n < len(fs) else {}
        for i in range(1, n + 1):
            b = out[n - i]._terms
            a = gs[i]
            if not a or not b:
                continue
            for ea, ca in a.items():
                for eb, cb in b.items():
                    key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                    prev = acc.get(key)
                    newv = -(ca * cb) if prev is None else prev - ca * cb
                    if newv:
                        acc[key] = newv
                    elif prev is not None:
                        del acc[key]
        out.append(MultiPoly._raw({e: c * inv for e, c in acc.items()}))
    return Series(tuple(out))


def series_pow(f: Series, n: int) -> Series:
    """n-th power by repeated squaring; f^0 is the constant one."""
    if n < 0:
        raise ValueError("negative series power")
    result = one_series(f.order)
    base = f
    while n:
        if n & 1:
            result = series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    return result


def series_compose(outer_coeffs: Sequence, g: Series) -> Series:
    """Substitute g into the univariate series with the given coefficients.

    Requires val(g) >= 1, so only outer coefficients up to g.order matter.
    """
    if g.coeffs[0]:
        raise ValueError("composition requires zero constant term")
    top = min(len(outer_coeffs) - 1, g.order)
    if top < 0:
        return zero_series(g.order)
    acc = const_series(outer_coeffs[top], g.order)
    for j in range(top - 1, -1, -1):
        acc = series_mul(acc, g)
        c = outer_coeffs[j]
        if c:
            coeffs = list(acc.coeffs)
            coeffs[0] = coeffs[0] + MultiPoly.const(c)
            acc = Series(tuple(coeffs))
    return acc


def extract_sequence(f: Series) -> list:
    """Family members: n! times the coefficient of x^n, for n = 0..order."""
    return [f.coeffs[n] * rat(factorial(n)) for n in range(f.order + 1)]


# -- closed-form coefficient lists ----------------------------------------

def log1p_coeffs(order: int) -> list:
    """log(1+x): 0, 1, -1/2, 1/3, ..."""
    return [rat(0)] + [rat((-1) ** (n + 1), n) for n in range(1, order + 1)]


def log1p_over_x_coeffs(order: int) -> list:
    """log(1+x)/x: alternating 1/(n+1)."""
    return [rat((-1) ** n, n + 1) for n in range(order + 1)]


def expm1_coeffs(order: int) -> list:
    """exp(x) - 1."""
    return [rat(0)] + [rat(1, factorial(n)) for n in range(1, order + 1)]


def one_minus_exp_neg_coeffs(order: int) -> list:
    """1 - exp(-x)."""
    return [rat(0)] + [rat((-1) ** (n + 1), factorial(n))
                       for n in range(1, order + 1)]


def polylog_outer_coeffs(k: int, order: int) -> list:
    """z^m coefficients 1/m^k of the polylogarithm; exact for any integer k."""
    out = [rat(0)]
    for m in range(1, order + 1):
        out.append(rat(1, m ** k) if k >= 0 else rat(m ** (-k)))
    return out


def _rat_series(coeffs) -> Series:
    return Series(tuple(MultiPoly.const(c) for c in coeffs))


def polylog_series(k: int, order: int) -> Series:
    """Polylogarithm evaluated at 1 - exp(-x), as a truncated series."""
    g = _rat_series(one_minus_exp_neg_coeffs(order))
    return series_compose(polylog_outer_coeffs(k, order), g)


# -- atoms ------------------------------------------------------------------

class AtomKind(enum.Enum):
    ONE_PLUS_X_POW_SYM = "one_plus_x_pow_sym"
    ONE_PLUS_X_POW_SYM_SHIFTED = "one_plus_x_pow_sym_shifted"
    EXP_LINEAR = "exp_linear"
    LOG1P = "log1p"
    LOG1P_OVER_X = "log1p_over_x"
    LOG1P_OVER_POLYLOG = "log1p_over_polylog"
    POLYLOG_OVER_EXPM1 = "polylog_over_expm1"
    POLYLOG_OVER_LOG1P = "polylog_over_log1p"
    APOSTOL_BERNOULLI_CORE = "apostol_bernoulli_core"
    APOSTOL_EULER_CORE = "apostol_euler_core"
    APOSTOL_GENOCCHI_CORE = "apostol_genocchi_core"


_RATIO_KINDS = frozenset((AtomKind.LOG1P_OVER_POLYLOG,
                          AtomKind.POLYLOG_OVER_EXPM1,
                          AtomKind.POLYLOG_OVER_LOG1P))

_POLYLOG_KINDS = frozenset((AtomKind.LOG1P_OVER_POLYLOG,
                            AtomKind.POLYLOG_OVER_EXPM1,
                            AtomKind.POLYLOG_OVER_LOG1P))


@dataclass(frozen=True)
class AtomSpec:
    """One generating-function factor with its parameters.

    ``argument`` is the exponent of (1+x)^. or the linear coefficient of the
    exponential; ``shift`` is the extra exponent of the shifted binomial
    kind; ``power`` is an outer integer power applied after the atom is
    built (used for higher-order families).
    """

    kind: AtomKind
    argument: Optional[MultiPoly] = None
    shift: Optional[MultiPoly] = None
    k: Optional[int] = None
    m: Optional[int] = None
    a: Optional[int] = None
    lam: Optional[Rational] = None
    power: int = 1

    def __post_init__(self):
        if self.power < 0:
            raise ParameterError("atom power must be non-negative")
        kind = self.kind
        if kind in (AtomKind.ONE_PLUS_X_POW_SYM, AtomKind.EXP_LINEAR,
                    AtomKind.ONE_PLUS_X_POW_SYM_SHIFTED):
            if self.argument is None:
                raise ParameterError(f"{kind.value} needs an argument")
        if kind is AtomKind.ONE_PLUS_X_POW_SYM_SHIFTED and self.shift is None:
            raise ParameterError("shifted binomial atom needs a shift")
        if kind in _POLYLOG_KINDS and self.k is None:
            raise ParameterError(f"{kind.value} needs a polylogarithm index k")
        if kind is AtomKind.APOSTOL_BERNOULLI_CORE:
            if self.m is None or self.m < 1:
                raise ParameterError("core order m must be a positive integer")
            if self.a is None or self.a < 0:
                raise ParameterError("core power a must be non-negative")
            if self.lam is None:
                raise ParameterError("core needs a rational lambda")
        if kind in (AtomKind.APOSTOL_EULER_CORE, AtomKind.APOSTOL_GENOCCHI_CORE):
            if self.a is None or self.a < 0:
                raise ParameterError("core power a must be non-negative")
            if self.lam is None:
                raise ParameterError("core needs a rational lambda")
            if self.lam == rat(-1):
                raise ParameterError("lambda must not equal -1")


def one_plus_pow(exponent) -> AtomSpec:
    return AtomSpec(AtomKind.ONE_PLUS_X_POW_SYM, argument=as_poly(exponent))


def one_plus_pow_shifted(exponent, shift) -> AtomSpec:
    return AtomSpec(AtomKind.ONE_PLUS_X_POW_SYM_SHIFTED,
                    argument=as_poly(exponent), shift=as_poly(shift))


def exp_linear(coefficient) -> AtomSpec:
    return AtomSpec(AtomKind.EXP_LINEAR, argument=as_poly(coefficient))


def log1p_atom() -> AtomSpec:
    return AtomSpec(AtomKind.LOG1P)


def log1p_over_x() -> AtomSpec:
    return AtomSpec(AtomKind.LOG1P_OVER_X)


def log1p_over_polylog(k: int) -> AtomSpec:
    return AtomSpec(AtomKind.LOG1P_OVER_POLYLOG, k=k)


def polylog_over_expm1(k: int, power: int = 1) -> AtomSpec:
    return AtomSpec(AtomKind.POLYLOG_OVER_EXPM1, k=k, power=power)


def polylog_over_log1p(k: int) -> AtomSpec:
    return AtomSpec(AtomKind.POLYLOG_OVER_LOG1P, k=k)


def bernoulli_core(m: int, lam, a: int) -> AtomSpec:
    return AtomSpec(AtomKind.APOSTOL_BERNOULLI_CORE, m=m, lam=rat_coerce(lam), a=a)


def euler_core(lam, a: int) -> AtomSpec:
    return AtomSpec(AtomKind.APOSTOL_EULER_CORE, lam=rat_coerce(lam), a=a)


def genocchi_core(lam, a: int) -> AtomSpec:
    return AtomSpec(AtomKind.APOSTOL_GENOCCHI_CORE, lam=rat_coerce(lam), a=a)


def rat_coerce(value) -> Rational:
    return value if isinstance(value, Rational) else rat(value)


def division_loss(atom: AtomSpec) -> int:
    """Truncation orders consumed by the divisions inside one atom."""
    if atom.kind in _RATIO_KINDS:
        return 1
    if (atom.kind is AtomKind.APOSTOL_BERNOULLI_CORE
            and atom.lam == rat(1) and atom.a > 0):
        return atom.m
    return 0


def guard_order(spec: AtomSpec, order: int) -> int:
    """Internal order an atom must be built at so that, after its divisions
    consume their valuations, the delivered series still reaches ``order``."""
    return order + division_loss(spec)


def _binomial_series(exponent: MultiPoly, order: int) -> Series:
    coeffs = [coeffring.falling_factorial(exponent, n) * rat(1, factorial(n))
              for n in range(order + 1)]
    return Series(tuple(coeffs))


def _exp_series(coefficient: MultiPoly, order: int) -> Series:
    coeffs = [MultiPoly.one()]
    power = MultiPoly.one()
    for n in range(1, order + 1):
        power = power * coefficient
        coeffs.append(power * rat(1, factorial(n)))
    return Series(tuple(coeffs))


def _lam_exp_minus_truncated(lam: Rational, m: int, order: int) -> Series:
    # lam*exp(x) minus the degree-(m-1) truncation of exp(x)
    coeffs = []
    for n in range(order + 1):
        c = lam * rat(1, factorial(n))
        if n < m:
            c = c - rat(1, factorial(n))
        coeffs.append(MultiPoly.const(c))
    return Series(tuple(coeffs))


def _lam_exp_plus_one(lam: Rational, order: int) -> Series:
    coeffs = [MultiPoly.const(lam + 1)]
    for n in range(1, order + 1):
        coeffs.append(MultiPoly.const(lam * rat(1, factorial(n))))
    return Series(tuple(coeffs))


@lru_cache(maxsize=None)
def _atom_build_cached(spec: AtomSpec, order: int) -> Series:
    target = guard_order(spec, order)
    kind = spec.kind
    if kind is AtomKind.ONE_PLUS_X_POW_SYM:
        base = _binomial_series(spec.argument, target)
    elif kind is AtomKind.ONE_PLUS_X_POW_SYM_SHIFTED:
        base = _binomial_series(spec.argument + spec.shift, target)
    elif kind is AtomKind.EXP_LINEAR:
        base = _exp_series(spec.argument, target)
    elif kind is AtomKind.LOG1P:
        base = _rat_series(log1p_coeffs(target))
    elif kind is AtomKind.LOG1P_OVER_X:
        base = _rat_series(log1p_over_x_coeffs(target))
    elif kind is AtomKind.LOG1P_OVER_POLYLOG:
        base = series_div(_rat_series(log1p_coeffs(target)),
                          polylog_series(spec.k, target))
    elif kind is AtomKind.POLYLOG_OVER_EXPM1:
        base = series_div(polylog_series(spec.k, target),
                          _rat_series(expm1_coeffs(target)))
    elif kind is AtomKind.POLYLOG_OVER_LOG1P:
        base = series_div(polylog_series(spec.k, target),
                          _rat_series(log1p_coeffs(target)))
    elif kind is AtomKind.APOSTOL_BERNOULLI_CORE:
        if spec.a == 0:
            base = one_series(target)
        else:
            den = _lam_exp_minus_truncated(spec.lam, spec.m, target)
            base = series_pow(series_div(x_power_series(spec.m, target), den),
                              spec.a)
    elif kind is AtomKind.APOSTOL_EULER_CORE:
        if spec.a == 0:
            base = one_series(target)
        else:
            den = _lam_exp_plus_one(spec.lam, target)
            base = series_pow(series_div(const_series(2, target), den), spec.a)
    elif kind is AtomKind.APOSTOL_GENOCCHI_CORE:
        if spec.a == 0:
            base = one_series(target)
        else:
            den = _lam_exp_plus_one(spec.lam, target)
            num = series_mul(const_series(2, target), x_power_series(1, target))
            base = series_pow(series_div(num, den), spec.a)
    else:  # pragma: no cover
        raise ParameterError(f"unknown atom kind {kind!r}")
    if base.order < order:
        raise EngineError(
            f"atom {kind.value} delivered order {base.order}, need {order}")
    if base.order > order:
        base = Series(base.coeffs[:order + 1])
    if spec.power != 1:
        base = series_pow(base, spec.power)
    return base


def atom_build(spec: AtomSpec, order: int) -> Series:
    """Exact truncated series of the named closed form, to the full order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return _atom_build_cached(spec, order)


def clear_series_caches() -> None:
    _atom_build_cached.cache_clear()
