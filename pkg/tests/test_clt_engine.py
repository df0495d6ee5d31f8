import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opclt.algebra import ComplexScalar
from opclt.clt_engine import (
    GaussianParams,
    coefficient_from_triple,
    convergence_table,
    finite_n_bruteforce,
    finite_n_coefficient,
    finite_n_scaled,
    limit_coefficient,
    limit_coefficient_from_params,
    partition_matrices,
    solve_params,
)
from opclt.operators import HypothesisViolation, kmatrix_from_rows
from conftest import HALF_I

small = st.fractions(min_value=-2, max_value=2, max_denominator=7)
cscalar = st.builds(ComplexScalar, small, small)


def test_solve_params_semigroup_case():
    gp = solve_params(0, 0, HALF_I)
    assert (gp.tau, gp.omega, gp.lam) == (0, HALF_I, 1)
    gp = solve_params(0, 0, 0)
    assert (gp.tau, gp.omega, gp.lam) == (0, 0, 1)
    gp = solve_params(0, 3, 0)
    assert (gp.tau, gp.omega, gp.lam) == (0, 0, 2)
    assert gp.exact


def test_solve_params_irrational_lambda_goes_float():
    gp = solve_params(0, 1, 0)
    assert not gp.exact
    assert gp.lam == pytest.approx(math.sqrt(2))


def test_re_tau_condition():
    with pytest.raises(HypothesisViolation):
        GaussianParams(-1, 0, 1)
    with pytest.raises(HypothesisViolation):
        solve_params(-1, 0, 0)


def test_canonical_sign():
    gp = GaussianParams(0, Fraction(1, 2), -1)
    assert (gp.omega, gp.lam) == (Fraction(-1, 2), 1)


def test_limit_coefficient_small_cases():
    K02, K20, K11 = ComplexScalar(Fraction(1, 3)), ComplexScalar(-2, 1), ComplexScalar(Fraction(1, 5), 3)
    assert limit_coefficient(K02, K20, K11, 0, 0) == 1
    assert limit_coefficient(K02, K20, K11, 1, 1) == K11
    assert limit_coefficient(K02, K20, K11, 2, 2) == 2 * K11 * K11 + K20 * K02


def test_triple_form_cases():
    w = ComplexScalar(Fraction(2, 5), Fraction(1, 7))
    for l in range(6):
        for m in range(6):
            want = w**l * math.factorial(l) if l == m else 0
            assert coefficient_from_triple(0, w, 1, l, m) == want
    assert coefficient_from_triple(0, 0, 2, 2, 0) == 3
    assert limit_coefficient(0, 3, 0, 2, 0) == 3


@settings(max_examples=40, deadline=None)
@given(cscalar, cscalar, cscalar, st.integers(0, 5), st.integers(0, 5))
def test_k_form_matches_params_form(K02, K20, K11, l, m):
    """Whenever the triple comes out exact, the two closed forms agree exactly."""
    if K02.re <= -1 or K02 == -1:
        return
    try:
        gp = solve_params(K02, K20, K11)
    except ValueError:
        return
    a = limit_coefficient(K02, K20, K11, l, m)
    b = limit_coefficient_from_params(gp, l, m)
    if gp.exact:
        assert a == b
    else:
        assert abs(complex(a) - complex(b)) <= 1e-9 * max(1.0, abs(complex(a)))


def test_parity_zeros():
    for l in range(7):
        for m in range(7):
            if (l + m) % 2:
                assert limit_coefficient(Fraction(1, 2), 3, ComplexScalar(1, 1), l, m) == 0


def test_partition_matrices_independent_of_N():
    assert len(partition_matrices(4, 4)) == 109
    assert partition_matrices(0, 0) == ((),)


def test_finite_n_two_point(km_two_point):
    for N in (1, 2, 5, 17, 1000):
        assert finite_n_coefficient(km_two_point, 1, 1, N) == HALF_I
        assert finite_n_coefficient(km_two_point, 2, 2, N) == Fraction(-(N - 1), 2 * N)
        assert finite_n_coefficient(km_two_point, 0, 0, N) == 1
        assert finite_n_coefficient(km_two_point, 2, 1, N) == 0


def test_N_equals_one_is_the_kmatrix(km_skewed):
    for l in range(5):
        for m in range(5):
            assert finite_n_coefficient(km_skewed, l, m, 1) == km_skewed[l, m]


def test_bruteforce_agrees(km_skewed, km_tilted):
    for km in (km_skewed, km_tilted):
        for l in range(4):
            for m in range(4):
                for N in (2, 3, 4):
                    assert finite_n_coefficient(km, l, m, N) == finite_n_bruteforce(km, l, m, N)


def test_odd_parity_off_hypotheses():
    # K01 != 0: the odd coefficients carry a sqrt(N) and come back as floats
    km = kmatrix_from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    scaled, parity = finite_n_scaled(km, 0, 1, 3)
    assert parity == 1 and scaled == 3
    assert finite_n_coefficient(km, 0, 1, 3) == pytest.approx(math.sqrt(3))
    # a square N keeps it exact
    assert finite_n_coefficient(km, 0, 1, 4) == 2


def test_convergence_differences(km_two_point):
    rows = convergence_table(km_two_point, 2, 2, [10, 100, 1000])
    for r in rows:
        assert r.difference == Fraction(1, 2 * r.N)
    rows = convergence_table(km_two_point, 0, 0, [3, 30])
    assert all(r.difference == 0 for r in rows)
    rows = convergence_table(km_two_point, 2, 1, [3, 30])
    assert all(r.value == 0 and r.limit == 0 for r in rows)
