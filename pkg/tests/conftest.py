from fractions import Fraction

import pytest

from opclt.algebra import ComplexScalar, Polynomial
from opclt.measures import gaussian, make_atomic, two_point_measure
from opclt.operators import OperatorSpec, k_matrix, semigroup_operator

HALF_I = ComplexScalar(0, Fraction(1, 2))
THIRD = ComplexScalar(Fraction(1, 3))


@pytest.fixture(scope="session")
def two_point():
    return two_point_measure()


@pytest.fixture(scope="session")
def skewed():
    return make_atomic([(-2, Fraction(1, 5)), (Fraction(1, 2), Fraction(4, 5))])


@pytest.fixture(scope="session")
def km_two_point(two_point):
    return k_matrix(semigroup_operator(two_point, HALF_I, 8), two_point, 8)


@pytest.fixture(scope="session")
def km_skewed(skewed):
    return k_matrix(semigroup_operator(skewed, THIRD, 8), skewed, 8)


def tilted_dilation(cutoff: int = 6) -> OperatorSpec:
    """A non-semigroup operator on Gaussian space that still meets the hypotheses.

    ``K(1) = 1 + (x^2 - 1)/3`` and ``K(x^j) = (x/2)^j + x^(j+2)/5`` for ``j >= 1``.
    """
    images = [Polynomial([Fraction(2, 3), 0, Fraction(1, 3)])]
    for j in range(1, cutoff + 1):
        c = [0] * (j + 3)
        c[j] = Fraction(1, 2**j)
        c[j + 2] = Fraction(1, 5)
        images.append(Polynomial(c))
    return OperatorSpec(images)


@pytest.fixture(scope="session")
def km_tilted():
    mu = gaussian()
    return k_matrix(tilted_dilation(6), mu, 6)
