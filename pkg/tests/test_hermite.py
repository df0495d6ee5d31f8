import cmath
import math
from fractions import Fraction

import pytest

from opclt.algebra import Polynomial
from opclt.hermite import (
    from_hermite,
    generating_function,
    generating_partial_sum,
    hermite_at_zero,
    hermite_norm_sq,
    hermite_polynomial,
    integral_representation,
    multiplication_expand,
    multiplication_sides,
    to_hermite,
)
from opclt.measures import gaussian, integrate_poly

X = Polynomial.x()


def test_small_degrees():
    assert hermite_polynomial(0) == Polynomial([1])
    assert hermite_polynomial(2) == X * X - 1
    assert hermite_polynomial(3) == X**3 - 3 * X
    assert str(hermite_polynomial(4)) == "x^4 - 6*x^2 + 3"


def test_recursion_up_to_20():
    for l in range(1, 20):
        assert hermite_polynomial(l + 1) == X * hermite_polynomial(l) - l * hermite_polynomial(l - 1)


def test_basis_conversion():
    assert to_hermite(X * X).coeffs == (1, 0, 1)
    e = to_hermite(hermite_polynomial(5))
    assert e.coeffs == (0, 0, 0, 0, 0, 1)
    assert to_hermite(Polynomial([1])).coeffs == (1,)
    p = Polynomial([Fraction(1, 3), -2, 0, 7])
    assert from_hermite(to_hermite(p)) == p


def test_values_at_zero():
    assert hermite_at_zero(2) == -1
    assert hermite_at_zero(4) == 3
    assert hermite_at_zero(7) == 0
    for l in range(13):
        assert hermite_polynomial(l)(0) == hermite_at_zero(l)


def test_norms():
    assert hermite_norm_sq(0) == 1
    assert hermite_norm_sq(4) == 24
    assert hermite_norm_sq(10) == 3628800
    g = gaussian()
    for l in range(6):
        for m in range(6):
            want = math.factorial(l) if l == m else 0
            assert integrate_poly(g, hermite_polynomial(l) * hermite_polynomial(m)) == want


def test_multiplication_formula_small_cases():
    w = multiplication_expand(0, 5)
    assert list(w.items()) == [((0,) * 5, 1)]
    w = multiplication_expand(2, 2)
    assert w == {(2, 0): Fraction(1, 2), (1, 1): 1, (0, 2): Fraction(1, 2)}
    lhs, rhs = multiplication_sides(1, 4)
    assert lhs == rhs


@pytest.mark.parametrize("N", [2, 3])
def test_multiplication_formula_float_path(N):
    lhs, rhs = multiplication_sides(3, N)
    for e in set(lhs.terms) | set(rhs.terms):
        assert abs(lhs.terms.get(e, 0) - rhs.terms.get(e, 0)) < 1e-12


def test_generating_function():
    for t, x in [(0.3, 1.2), (0.5 + 0.2j, -0.7), (-0.4, 2.0)]:
        assert abs(generating_partial_sum(t, x, 40) - generating_function(t, x)) < 1e-10
    assert generating_function(0.1, 0.0) == cmath.exp(-0.005)


def test_integral_representation():
    for l in range(10):
        assert integral_representation(l) == hermite_polynomial(l)
