from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from opclt.algebra import (
    I,
    ONE,
    ComplexScalar,
    MultiPolynomial,
    Polynomial,
    canonical_sign,
    compositions,
    exact_sqrt,
    falling_factorial,
    format_rational,
    parse_rational,
    poly_eval,
    poly_scale_arg,
)

X = Polynomial.x()
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
scalars = st.builds(ComplexScalar, rationals, rationals)
polys = st.lists(scalars, max_size=5).map(Polynomial)


def test_difference_of_squares():
    assert (X + 1) * (X - 1) == Polynomial([-1, 0, 1])


def test_additive_identity_and_scalar():
    p = Polynomial([3, 0, Fraction(1, 7)])
    assert p + 0 == p
    assert 2 * (Fraction(3, 2) * X) == 3 * X


def test_evaluation():
    p = X * X - 1
    assert poly_eval(p, 2) == 3
    q = Polynomial([5, 1, 1])
    assert q(0) == 5
    assert (X * X + 1)(I) == 0


def test_scale_arg():
    p = X * X - 1
    assert poly_scale_arg(p, 2) == 4 * X * X - 1
    assert poly_scale_arg(p, 1) == p
    assert poly_scale_arg(p, 0) == Polynomial([-1])


def test_falling_factorial():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(7, 0) == 1
    with pytest.raises(ValueError):
        falling_factorial(-1, 1)


def test_rational_strings_roundtrip():
    for s in ["3/4", "-7", "0", "22/7"]:
        assert format_rational(parse_rational(s)) == s
    z = ComplexScalar(Fraction(-1, 3), 2)
    assert ComplexScalar.from_json(z.to_json()) == z


def test_exact_and_float_do_not_mix():
    with pytest.raises(TypeError):
        ComplexScalar(1) + 0.5
    with pytest.raises(TypeError):
        Polynomial([ONE, 1.5 + 0j])


def test_exact_sqrt():
    assert exact_sqrt(ComplexScalar(0, 2)) == ComplexScalar(1, 1)
    assert exact_sqrt(ComplexScalar(Fraction(9, 4))) == ComplexScalar(Fraction(3, 2))
    assert exact_sqrt(ComplexScalar(2)) is None
    assert canonical_sign(ComplexScalar(-1, 1)) == ComplexScalar(1, -1)


def test_compositions_count():
    from math import comb

    assert len(list(compositions(4, 3))) == comb(6, 2)
    assert list(compositions(0, 3)) == [(0, 0, 0)]


def test_multipolynomial_apply_in_variable():
    # the map x -> 2x applied to variable 0 of x0 * x1
    f = MultiPolynomial(2, {(1, 1): ONE})
    g = f.apply_in_variable(0, [[ONE], [0, ComplexScalar(2)]])
    assert g == MultiPolynomial(2, {(1, 1): ComplexScalar(2)})


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p


@given(polys, polys, scalars)
def test_evaluation_is_a_homomorphism(p, q, z):
    assert (p * q)(z) == p(z) * q(z)
    assert (p + q)(z) == p(z) + q(z)


@given(polys)
def test_json_roundtrip(p):
    assert Polynomial.from_json(p.to_json()) == p
