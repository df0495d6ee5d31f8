import math
from fractions import Fraction

import pytest

from opclt.algebra import ComplexScalar, Polynomial
from opclt.clt_engine import finite_n_coefficient
from opclt.hypercontractivity import (
    ExponentPair,
    epperson_ok,
    ratio_for,
    ratio_scan,
    tensor_contraction_check,
    tensor_grid_coefficient,
    transference_demo,
    two_point_ratio_scan,
)
from opclt.measures import gaussian
from opclt.operators import identity_operator, semigroup_operator

X = Polynomial.x()


def test_epperson_examples():
    ok, slack = epperson_ok(ExponentPair(2, 2), 0.9)
    assert ok and slack == pytest.approx(0.38)
    ok, slack = epperson_ok(ExponentPair(1.5, 3), 1j * math.sqrt(0.5))
    assert ok and abs(slack) < 1e-12
    ok, _ = epperson_ok(ExponentPair(1, 2), 1)
    assert not ok
    with pytest.raises(ValueError):
        epperson_ok(ExponentPair(3, 2), 0.1)


def test_real_t_ratio_is_one_for_omega_i(two_point):
    K = semigroup_operator(two_point, 1j, 1)
    pq = ExponentPair(2, 2)
    for t in (-3.0, -0.5, 0.0, 0.7, 12.0):
        assert ratio_for(two_point, K, Polynomial([1.0, t]), pq) == pytest.approx(1.0)


def test_scans():
    res = two_point_ratio_scan(ExponentPair(1.5, 3), 1j * math.sqrt(0.5))
    assert res.grid_points >= 10_000
    assert res.max_ratio <= 1 + 1e-9
    bad = two_point_ratio_scan(ExponentPair(2, 2), 2)
    assert bad.max_ratio >= 2 - 1e-12


def test_scan_on_skewed_measure(skewed):
    res = ratio_scan(skewed, Fraction(1, 3), ExponentPair(2, 2))
    assert res.max_ratio <= 1 + 1e-9


def test_grid_oracle_matches_engine(two_point, km_two_point):
    K = semigroup_operator(two_point, ComplexScalar(0, Fraction(1, 2)), 4)
    for N in (1, 2, 4):
        for l in range(3):
            for m in range(3):
                want = complex(finite_n_coefficient(km_two_point, l, m, N))
                assert abs(tensor_grid_coefficient(K, two_point, l, m, N) - want) < 1e-12


def test_tensor_identity(two_point):
    r = tensor_contraction_check(identity_operator(2), two_point, two_point, ExponentPair(1.7, 1.7), 3, trials=50)
    assert r <= 1 + 1e-12


def test_tensor_one_variable_is_the_scan(two_point):
    w = 1j * math.sqrt(0.5)
    pq = ExponentPair(1.5, 3)
    K = semigroup_operator(two_point, w, 2)
    one_d = two_point_ratio_scan(pq, w).max_ratio
    assert tensor_contraction_check(K, two_point, two_point, pq, 1, trials=100, seed=5) <= one_d + 1e-9


def test_tensor_is_deterministic(two_point):
    K = semigroup_operator(two_point, 0.5j, 2)
    pq = ExponentPair(2, 2)
    a = tensor_contraction_check(K, two_point, two_point, pq, 2, trials=20, seed=11)
    b = tensor_contraction_check(K, two_point, two_point, pq, 2, trials=20, seed=11)
    assert a == b


def test_transference_reports(two_point, skewed):
    r = transference_demo(two_point, 1j * math.sqrt(0.5), ExponentPair(1.5, 3))
    assert r.hypotheses_ok and r.is_hermite_semigroup and r.epperson and r.empirical_ok
    assert abs(r.epperson_slack) < 1e-12
    r = transference_demo(skewed, Fraction(1, 3), ExponentPair(2, 2))
    assert r.exact_params and r.is_hermite_semigroup and r.epperson
    assert r.recovered_omega == Fraction(1, 3)
    r = transference_demo(two_point, 2, ExponentPair(2, 2))
    assert not r.epperson and r.empirical_ratio > 1 and r.consistent
    r = transference_demo(gaussian(), Fraction(1, 2), ExponentPair(2, 2))
    assert r.empirical_ratio is None and r.notes
