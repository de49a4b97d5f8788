"""Sparse Laurent arithmetic and the certified-division primitive."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cluster_painleve.laurent import (
    LaurentPoly,
    format_rational,
    laurent_try_div,
    parse_rational,
)

V = ("x", "y")


def P(terms):
    return LaurentPoly(V, terms)


def test_constructor_drops_zero_coefficients():
    p = P({(1, 0): 3, (0, 1): 0})
    assert p.terms == {(1, 0): 3}


def test_gen_and_monomial():
    x = LaurentPoly.gen(V, "x")
    assert x.terms == {(1, 0): 1}
    m = LaurentPoly.monomial(V, (-2, 1), 5)
    assert m.terms == {(-2, 1): 5}


def test_mixed_variable_lists_rejected():
    with pytest.raises(ValueError):
        P({(1, 0): 1}) + LaurentPoly(("x",), {(1,): 1})


def test_min_exponent_and_shift():
    p = P({(-2, 1): 1, (3, 0): 4})
    assert p.min_exponent(0) == -2
    assert p.min_exponent(1) == 0
    q = p.shift((2, 0))
    assert q.terms == {(0, 1): 1, (5, 0): 4}


def test_evaluate_requires_every_variable():
    p = P({(1, 1): 1})
    assert p.evaluate({"x": Fraction(2), "y": Fraction(3, 2)}) == 3
    with pytest.raises(KeyError):
        p.evaluate({"x": Fraction(2)})


exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
coefs = st.integers(-9, 9).filter(bool)
polys = st.dictionaries(exps, coefs, min_size=0, max_size=5).map(P)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@given(polys, polys, polys)
def test_ring_distributivity(p, q, r):
    assert (p + q) * r == p * r + q * r


@given(polys, nonzero_polys)
@settings(max_examples=150)
def test_try_div_roundtrip(p, q):
    got = laurent_try_div(p * q, q)
    assert got == p


def test_try_div_refuses_non_laurent_quotient():
    x = LaurentPoly.gen(V, "x")
    one = LaurentPoly.const(V, 1)
    assert laurent_try_div(x, x + one) is None


def test_try_div_by_monomial_always_succeeds():
    p = P({(0, 0): 1, (1, 2): 7})
    m = LaurentPoly.monomial(V, (3, -1), 1)
    assert laurent_try_div(p, m) == p.shift((-3, 1))


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 4))
def test_rational_string_roundtrip(num, den):
    f = Fraction(num, den)
    assert parse_rational(format_rational(f)) == f


def test_parse_rational_accepts_integers():
    assert parse_rational("-7") == Fraction(-7)
    assert format_rational(Fraction(3, 1)) == "3"


def test_json_roundtrip_preserves_terms():
    p = P({(2, -1): 3, (0, 0): -5})
    assert LaurentPoly.from_json(p.to_json()) == p
