"""Exact coefficient arithmetic: rationals and sparse polynomials.

The scalar field is the exact rationals.  gmpy2's ``mpq`` is used when it is
importable (it is much faster); the stdlib ``Fraction`` is the fallback.  Both
keep numerator/denominator in lowest terms with a positive denominator, so
every value has one representation and rendering does not depend on the
backend.

Polynomials live in the fixed three-symbol alphabet ``{GAMMA, ETA, OMEGA}``
and are stored sparsely as a map from exponent triples to nonzero rational
coefficients.  The zero polynomial is the empty map.  All values are
immutable after construction and all operations are pure, so they can be
shared freely.
"""

from __future__ import annotations

import enum
import math
import re
from typing import Iterable, Mapping, Union

try:
    from gmpy2 import mpq as Rational

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

    HAVE_GMPY2 = False

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(num: int = 0, den: int = 1) -> Rational:
    """Exact rational num/den, reduced, denominator positive."""
    if isinstance(num, float) or isinstance(den, float):
        raise TypeError("floats are not exact; pass integers or rationals")
    return Rational(num, den)


def rat_from_str(text: str) -> Rational:
    """Parse 'p' or 'p/q' (no decimals, q nonzero)."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"not a rational 'p/q': {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Rational(int(p), int(q))
    return Rational(int(text))


def rat_str(value) -> str:
    """Render a rational as 'p/q', omitting '/1'."""
    num, den = int(value.numerator), int(value.denominator)
    return f"{num}/{den}" if den != 1 else str(num)


def binom(n: int, j: int) -> Rational:
    """Binomial coefficient as a rational; zero when j > n."""
    if j > n:
        return Rational(0)
    return Rational(math.comb(n, j))


class Symbol(enum.Enum):
    """The three polynomial symbols; no others exist."""

    GAMMA = 0
    ETA = 1
    OMEGA = 2


_ZERO_EXP = (0, 0, 0)

Scalar = Union[int, Rational]


class MultiPoly:
    """Sparse polynomial in GAMMA, ETA, OMEGA over the rationals.

    Terms map exponent triples to nonzero coefficients; the map is always in
    canonical form (no zero coefficients, unique keys).  Instances are
    immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping = ()):
        canon = {}
        for exps, coeff in dict(terms).items():
            e = (int(exps[0]), int(exps[1]), int(exps[2]))
            if min(e) < 0:
                raise ValueError(f"negative exponent in {exps!r}")
            c = coeff if isinstance(coeff, Rational) else Rational(coeff)
            if c:
                canon[e] = canon[e] + c if e in canon else c
                if not canon[e]:
                    del canon[e]
        self._terms = canon
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        # trusted canonical dict, adopted without copying
        self = object.__new__(cls)
        self._terms = terms
        self._hash = None
        return self

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.const(1)

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass integers or rationals")
        c = value if isinstance(value, Rational) else Rational(value)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def symbol(cls, sym: Symbol) -> "MultiPoly":
        e = [0, 0, 0]
        e[sym.value] = 1
        return cls._raw({tuple(e): Rational(1)})

    # -- queries ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ZERO_EXP}

    def constant_value(self) -> Rational:
        """The value of a constant polynomial (zero for the zero poly)."""
        if not self._terms:
            return Rational(0)
        if set(self._terms) != {_ZERO_EXP}:
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[_ZERO_EXP]

    def degree(self, sym: Symbol) -> int:
        """Largest exponent of sym; -1 for the zero polynomial."""
        return max((e[sym.value] for e in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def symbols(self) -> set:
        """Symbols that actually occur."""
        out = set()
        for e in self._terms:
            for sym in Symbol:
                if e[sym.value] > 0:
                    out.add(sym)
        return out

    def sorted_terms(self) -> list:
        """Terms ordered by descending total degree, then descending
        exponents in (GAMMA, ETA, OMEGA) order; the rendering order."""
        return sorted(self._terms.items(),
                      key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            prev = out.get(e)
            newv = c if prev is None else prev + c
            if newv:
                out[e] = newv
            elif prev is not None:
                del out[e]
        return MultiPoly._raw(out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if not self._terms or not other._terms:
                return MultiPoly._raw({})
            out: dict = {}
            for ea, ca in self._terms.items():
                for eb, cb in other._terms.items():
                    key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                    prev = out.get(key)
                    newv = ca * cb if prev is None else prev + ca * cb
                    if newv:
                        out[key] = newv
                    elif prev is not None:
                        del out[key]
            return MultiPoly._raw(out)
        if isinstance(other, (int, Rational)):
            c = other if isinstance(other, Rational) else Rational(other)
            if not c:
                return MultiPoly._raw({})
            return MultiPoly._raw({e: v * c for e, v in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and substitution --------------------------------------

    def eval(self, at: Mapping) -> Rational:
        """Substitute rational values for every occurring symbol."""
        values = [None, None, None]
        for sym, val in at.items():
            values[sym.value] = val if isinstance(val, Rational) else Rational(val)
        total = Rational(0)
        for e, c in self._terms.items():
            term = c
            for i in range(3):
                if e[i]:
                    if values[i] is None:
                        raise ValueError(
                            f"no assignment for {Symbol(i).name} in {self}")
                    term = term * values[i] ** e[i]
            total += term
        return total

    def subst(self, replacements: Mapping) -> "MultiPoly":
        """Substitute polynomials for symbols (exact composition)."""
        repl = [None, None, None]
        for sym, poly in replacements.items():
            repl[sym.value] = poly
        pow_memo: dict = {}

        def power(i: int, e: int) -> "MultiPoly":
            key = (i, e)
            if key not in pow_memo:
                pow_memo[key] = repl[i] ** e
            return pow_memo[key]

        acc: dict = {}
        for e, c in self._terms.items():
            piece = MultiPoly.const(c)
            rest = [0, 0, 0]
            for i in range(3):
                if e[i]:
                    if repl[i] is None:
                        rest[i] = e[i]
                    else:
                        piece = piece * power(i, e[i])
            if any(rest):
                piece = piece * MultiPoly._raw({tuple(rest): Rational(1)})
            for ek, ck in piece._terms.items():
                prev = acc.get(ek)
                newv = ck if prev is None else prev + ck
                if newv:
                    acc[ek] = newv
                elif prev is not None:
                    del acc[ek]
        return MultiPoly._raw(acc)

    # -- rendering --------------------------------------------------------

    def render(self, names: tuple = ("g", "e", "w")) -> str:
        """Human-readable form, e.g. 'g^2 - 2*g + 2/3'."""
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{e[i]}" if e[i] > 1 else names[i]
                for i in range(3) if e[i])
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rat_str(mag)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()})"


GAMMA = MultiPoly.symbol(Symbol.GAMMA)
ETA = MultiPoly.symbol(Symbol.ETA)
OMEGA = MultiPoly.symbol(Symbol.OMEGA)


def as_poly(value) -> MultiPoly:
    """Coerce a Symbol, scalar, or MultiPoly to a MultiPoly."""
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, Symbol):
        return MultiPoly.symbol(value)
    return MultiPoly.const(value)


def falling_factorial(base, j: int) -> MultiPoly:
    """Product base*(base-1)*...*(base-j+1); one when j = 0."""
    p = as_poly(base)
    out = MultiPoly.one()
    for i in range(j):
        out = out * (p - MultiPoly.const(i))
    return out


def linear_combination(pairs: Iterable) -> MultiPoly:
    """Sum of coeff*poly over (coeff, poly) pairs, accumulated in one pass."""
    acc: dict = {}
    for coeff, poly in pairs:
        if not coeff or not poly._terms:
            continue
        for e, c in poly._terms.items():
            prev = acc.get(e)
            newv = coeff * c if prev is None else prev + coeff * c
            if newv:
                acc[e] = newv
            elif prev is not None:
                del acc[e]
    return MultiPoly._raw(acc)
