"""Exact computations for tensorized operators on polynomials and their Gaussian limits.

Typical use::

    from fractions import Fraction
    from opclt import ComplexScalar, two_point_measure, semigroup_operator, k_matrix, finite_n_coefficient
    mu = two_point_measure()
    km = k_matrix(semigroup_operator(mu, ComplexScalar(0, Fraction(1, 2))), mu)
    finite_n_coefficient(km, 2, 2, 100)
"""

from .algebra import ComplexScalar, MultiPolynomial, Polynomial, format_rational, parse_rational
from .clt_engine import (
    CoefficientTable,
    GaussianParams,
    coefficient_from_triple,
    convergence_table,
    finite_n_bruteforce,
    finite_n_coefficient,
    finite_n_table,
    limit_coefficient,
    limit_coefficient_from_params,
    limit_table,
    params_from_kmatrix,
    partition_matrices,
    solve_params,
)
from .gaussian_ops import (
    apply_C,
    coefficients_direct,
    compose_ts,
    kernel_apply_numeric,
    kernel_params,
    params_from_kernel,
)
from .hermite import hermite_at_zero, hermite_polynomial, multiplication_expand, to_hermite, from_hermite
from .hypercontractivity import (
    ExponentPair,
    epperson_ok,
    tensor_contraction_check,
    tensor_grid_coefficient,
    transference_demo,
    two_point_ratio_scan,
)
from .measures import Measure, from_moments, gaussian, make_atomic, orthogonal_polynomial, two_point_measure
from .operators import (
    HypothesisViolation,
    KMatrix,
    OperatorSpec,
    check_hypotheses,
    identity_operator,
    k_matrix,
    kmatrix_from_rows,
    semigroup_operator,
)

__version__ = "0.1.0"
