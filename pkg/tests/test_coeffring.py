import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydaehee.coeffring import (ETA, GAMMA, OMEGA, MultiPoly, Symbol, binom,
                                  falling_factorial, linear_combination, rat,
                                  rat_from_str, rat_str)


# -- rationals ---------------------------------------------------------------

def test_rat_add():
    assert rat(1, 2) + rat(1, 3) == rat(5, 6)


def test_rat_mul_absorbing_zero():
    assert rat(0) * rat(7, 3) == rat(0)


def test_rat_div_reduces():
    assert rat(2, 3) / rat(4, 9) == rat(3, 2)


def test_rat_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat(1) / rat(0)


def test_rat_neg_sub():
    assert -rat(3, 4) == rat(-3, 4)
    assert rat(1, 2) - rat(1, 3) == rat(1, 6)


def test_rat_normalization():
    x = rat(-4, -6)
    assert x.numerator == 2 and x.denominator == 3
    zero = rat(0, 5)
    assert zero.numerator == 0 and zero.denominator == 1


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


def test_rat_from_str():
    assert rat_from_str("-3/2") == rat(-3, 2)
    assert rat_from_str("7") == rat(7)
    for bad in ("0.5", "1/0", "", "x", "1/2/3"):
        with pytest.raises(ValueError):
            rat_from_str(bad)


def test_rat_str():
    assert rat_str(rat(1, 6)) == "1/6"
    assert rat_str(rat(-3, 2)) == "-3/2"
    assert rat_str(rat(4, 2)) == "2"
    assert rat_str(rat(0)) == "0"


def test_binom():
    assert binom(4, 2) == rat(6)
    assert binom(5, 0) == rat(1)
    assert binom(3, 5) == rat(0)


# -- polynomials -------------------------------------------------------------

def test_poly_add_cancellation():
    one = MultiPoly.one()
    assert (GAMMA + one) + (-GAMMA + one) == MultiPoly.const(2)


def test_poly_add_identity():
    eta_sq = ETA * ETA
    assert MultiPoly.zero() + eta_sq == eta_sq


def test_poly_add_merges_like_terms():
    ge = GAMMA * ETA
    assert ge + ge == ge * 2


def test_poly_mul_difference_of_squares():
    one = MultiPoly.one()
    assert (GAMMA + one) * (GAMMA - one) == GAMMA * GAMMA - one


def test_poly_mul_binomial_square():
    d = ETA - OMEGA
    expected = ETA * ETA - ETA * OMEGA * 2 + OMEGA * OMEGA
    assert d * d == expected


def test_poly_mul_absorbing_zero():
    assert MultiPoly.zero() * GAMMA ** 3 == MultiPoly.zero()


def test_poly_eval_root():
    p = GAMMA - MultiPoly.const(rat(1, 2))
    assert p.eval({Symbol.GAMMA: rat(1, 2)}) == rat(0)


def test_poly_eval_direct():
    p = GAMMA * GAMMA - MultiPoly.one()
    assert p.eval({Symbol.GAMMA: rat(3)}) == rat(8)
    q = (ETA - OMEGA) ** 2
    assert q.eval({Symbol.ETA: rat(2), Symbol.OMEGA: rat(5)}) == rat(9)


def test_poly_eval_missing_symbol():
    p = GAMMA + ETA
    with pytest.raises(ValueError, match="ETA"):
        p.eval({Symbol.GAMMA: rat(1)})


def test_poly_eval_ignores_unused_assignments():
    p = GAMMA + MultiPoly.one()
    assert p.eval({Symbol.GAMMA: rat(1), Symbol.OMEGA: rat(9)}) == rat(2)


def test_poly_subst():
    p = GAMMA ** 2 + ETA
    shifted = p.subst({Symbol.GAMMA: GAMMA + MultiPoly.one()})
    assert shifted == GAMMA ** 2 + GAMMA * 2 + MultiPoly.one() + ETA


def test_poly_degree():
    p = GAMMA ** 3 * ETA + OMEGA
    assert p.degree(Symbol.GAMMA) == 3
    assert p.degree(Symbol.ETA) == 1
    assert p.total_degree() == 4
    assert MultiPoly.zero().degree(Symbol.GAMMA) == -1


def test_poly_render():
    assert str(GAMMA ** 2 - MultiPoly.one()) == "g^2 - 1"
    assert str(GAMMA - MultiPoly.const(rat(1, 2))) == "g - 1/2"
    assert str(MultiPoly.zero()) == "0"
    p = GAMMA ** 2 * ETA * rat(5, 6) - OMEGA * 2 + MultiPoly.const(rat(1, 3))
    assert str(p) == "5/6*g^2*e - 2*w + 1/3"
    assert str(-GAMMA) == "-g"


def test_poly_render_custom_names():
    assert (GAMMA * ETA).render(names=("x", "y", "z")) == "x*y"


def test_falling_factorial():
    assert falling_factorial(Symbol.OMEGA, 0) == MultiPoly.one()
    assert falling_factorial(Symbol.OMEGA, 1) == OMEGA
    expected = OMEGA ** 3 - OMEGA ** 2 * 3 + OMEGA * 2
    assert falling_factorial(Symbol.OMEGA, 3) == expected
    assert falling_factorial(OMEGA, 3) == expected  # polynomial base too


def test_falling_factorial_of_constant():
    assert falling_factorial(MultiPoly.const(4), 2) == MultiPoly.const(12)


def test_linear_combination():
    out = linear_combination([(rat(2), GAMMA), (rat(1), ETA), (rat(0), OMEGA)])
    assert out == GAMMA * 2 + ETA


# -- property tests ----------------------------------------------------------

rationals = st.builds(rat, st.integers(-9, 9), st.integers(1, 6))
nonzero_rationals = st.builds(rat, st.integers(1, 9), st.integers(1, 6)).map(
    lambda r: r)

exponents = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, rationals, max_size=4).map(MultiPoly)
nonzero_polys = polys.filter(bool)


@given(polys, polys, polys)
@settings(max_examples=1000, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys, rationals, rationals, rationals)
@settings(deadline=None)
def test_eval_is_ring_homomorphism(p, q, x, y, z):
    at = {Symbol.GAMMA: x, Symbol.ETA: y, Symbol.OMEGA: z}
    assert (p + q).eval(at) == p.eval(at) + q.eval(at)
    assert (p * q).eval(at) == p.eval(at) * q.eval(at)


@given(nonzero_polys, nonzero_polys)
@settings(deadline=None)
def test_integral_domain(p, q):
    assert p * q != MultiPoly.zero()


@given(polys, polys)
@settings(deadline=None)
def test_canonical_form_idempotent(p, q):
    result = p * q + p
    rebuilt = MultiPoly(dict(result.sorted_terms()))
    assert rebuilt == result
    assert dict(rebuilt.sorted_terms()) == dict(result.sorted_terms())


@given(polys)
@settings(deadline=None)
def test_hash_consistency(p):
    rebuilt = MultiPoly(dict(p.sorted_terms()))
    assert hash(rebuilt) == hash(p)
