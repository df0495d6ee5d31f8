from fractions import Fraction

import pytest

from opclt.algebra import Polynomial
from opclt.hermite import hermite_polynomial
from opclt.measures import (
    BadWeights,
    DegenerateHankel,
    DuplicateAtoms,
    NonStandardized,
    NotAtomic,
    from_moments,
    gaussian,
    hankel_minors,
    integrate_poly,
    lp_norm,
    make_atomic,
    measure_from_json,
    orthogonal_polynomial,
)

X = Polynomial.x()


def test_skewed_measure_moments(skewed):
    assert skewed.moment(3) == Fraction(-3, 2)
    assert skewed.rank == 2


def test_validation_errors():
    with pytest.raises(NonStandardized):
        make_atomic([(0, 1)])
    with pytest.raises(BadWeights):
        make_atomic([(-1, Fraction(1, 2)), (1, Fraction(1, 3))])
    with pytest.raises(DuplicateAtoms):
        make_atomic([(1, Fraction(1, 2)), (1, Fraction(1, 2))])
    with pytest.raises(BadWeights):
        make_atomic([(-1, Fraction(3, 2)), (1, Fraction(-1, 2))])


def test_moments(two_point):
    g = gaussian()
    assert g.moment(4) == 3
    assert g.moment(5) == 0
    assert two_point.moment(6) == 1
    assert two_point.moment(7) == 0


def test_integration(two_point, skewed):
    g = gaussian()
    h2 = hermite_polynomial(2)
    assert integrate_poly(g, h2 * h2) == 2
    assert integrate_poly(two_point, X * X - 1) == 0
    for mu in (g, two_point, skewed):
        assert integrate_poly(mu, X) == 0


def test_orthogonal_polynomials(two_point, skewed):
    assert orthogonal_polynomial(gaussian(), 3) == X**3 - 3 * X
    assert orthogonal_polynomial(two_point, 1) == X
    with pytest.raises(DegenerateHankel):
        orthogonal_polynomial(two_point, 2)
    # two atoms: P_2 exists but vanishes in L^2, so it is only returned on request
    with pytest.raises(DegenerateHankel):
        orthogonal_polynomial(skewed, 2)
    assert orthogonal_polynomial(skewed, 2, allow_null=True) == X * X + Fraction(3, 2) * X - 1
    assert orthogonal_polynomial(two_point, 2, allow_null=True) == X * X - 1
    with pytest.raises(DegenerateHankel):
        orthogonal_polynomial(two_point, 3, allow_null=True)


def test_orthogonal_polynomials_match_hermite():
    g = gaussian()
    for l in range(9):
        assert orthogonal_polynomial(g, l) == hermite_polynomial(l)


def test_lp_norms(two_point):
    assert lp_norm(two_point, X, 3.7) == pytest.approx(1.0)
    assert lp_norm(two_point, 1 + X, 1) == pytest.approx(1.0)
    assert lp_norm(two_point, Polynomial([-5]), 2.5) == pytest.approx(5.0)
    with pytest.raises(NotAtomic):
        lp_norm(gaussian(), X, 2)


def test_moment_defined_measure():
    mu = from_moments(["1", "0", "1", "0", "3", "0", "15"])
    assert orthogonal_polynomial(mu, 3) == hermite_polynomial(3)
    assert all(d > 0 for d in hankel_minors(mu, 3))
    with pytest.raises(NonStandardized):
        from_moments(["1", "0", "2"])


def test_json_roundtrip(skewed):
    assert measure_from_json(skewed.to_json()) == skewed
    assert measure_from_json({"type": "gaussian"}) == gaussian()
