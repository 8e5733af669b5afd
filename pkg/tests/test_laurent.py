from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quiverorbits.laurent import LaurentPoly, gl_order, newton_interpolate

q = sympy.Symbol("q")

polys = st.dictionaries(st.integers(-4, 6), st.fractions(max_denominator=5).filter(bool),
                        max_size=5).map(LaurentPoly)


def to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * q ** k for k, c in p.coeffs.items()),
               sympy.Integer(0))


@settings(max_examples=80, deadline=None)
@given(a=polys, b=polys)
def test_ring_operations_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@settings(max_examples=80, deadline=None)
@given(a=polys, b=polys)
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero:
        return
    assert (a * b).exact_div(b) == a


@settings(max_examples=60, deadline=None)
@given(a=polys, x=st.integers(1, 9))
def test_derivative_and_evaluation(a, x):
    assert a.derivative()(x) == Fraction(sympy.diff(to_sympy(a), q).subs(q, x))
    assert a(x) == Fraction(to_sympy(a).subs(q, x))


def test_non_divisible_raises():
    with pytest.raises(ArithmeticError):
        LaurentPoly({2: 1, 0: 1}).exact_div(LaurentPoly({1: 1, 0: -1}))


def test_gl_order():
    assert gl_order(0) == 1
    assert gl_order(1) == LaurentPoly({1: 1, 0: -1})
    assert gl_order(2) == LaurentPoly({4: 1, 3: -1, 2: -1, 1: 1})
    # |GL_2(F_3)| = 48
    assert gl_order(2)(3) == 48


@settings(max_examples=40, deadline=None)
@given(coeffs=st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_newton_interpolation_recovers_polynomial(coeffs):
    p = LaurentPoly(dict(enumerate(coeffs)))
    pts = {x: p(x) for x in (2, 3, 5, 7, 11, 13)}
    assert newton_interpolate(pts) == p


def test_normalization_and_inversion():
    p = LaurentPoly({-3: 1, -1: 2})
    assert p.normalized() == LaurentPoly({0: 1, 2: 2})
    assert p.invert_variable("u") == LaurentPoly({3: 1, 1: 2}, "u")
    assert LaurentPoly().normalized().is_zero


def test_root_multiplicity_and_str():
    p = LaurentPoly({1: 1, 0: -1}) ** 2
    assert p.root_multiplicity(1) == 2
    assert str(p) == "q^2 - 2*q + 1"
    assert p.to_pairs() == [(0, "1/1"), (1, "-2/1"), (2, "1/1")]
    assert LaurentPoly.from_pairs([(k, Fraction(c)) for k, c in p.to_pairs()]) == p
