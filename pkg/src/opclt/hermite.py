"""Monic Hermite polynomials for the standard normal distribution.

``H_0 = 1``, ``H_1 = x`` and ``H_{l+1} = x H_l - l H_{l-1}``; they are
orthogonal for the Gaussian measure with ``int H_l^2 dgamma = l!``.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    ONE,
    ZERO,
    ComplexScalar,
    I,
    MultiPolynomial,
    Polynomial,
    as_scalar,
    compose_with_multi,
    compositions,
    factorial,
    sum_of_variables,
    univariate_in,
)
from .measures import gaussian_moment


@lru_cache(maxsize=None)
def hermite_polynomial(l: int) -> Polynomial:
    if l < 0:
        raise ValueError("Hermite index must be nonnegative")
    if l == 0:
        return Polynomial([1])
    if l == 1:
        return Polynomial([0, 1])
    x = Polynomial.x()
    return x * hermite_polynomial(l - 1) - (l - 1) * hermite_polynomial(l - 2)


@lru_cache(maxsize=None)
def _hermite_float(l: int) -> Polynomial:
    return hermite_polynomial(l).to_float()


def _hermite_like(l: int, c) -> Polynomial:
    return hermite_polynomial(l) if type(c) is ComplexScalar else _hermite_float(l)


def hermite_at_zero(l: int) -> Fraction:
    """Closed form of ``H_l(0)``: zero for odd ``l``, else ``(-1)^(l/2) l! / ((l/2)! 2^(l/2))``."""
    if l < 0:
        raise ValueError("Hermite index must be nonnegative")
    if l % 2:
        return Fraction(0)
    h = l // 2
    return Fraction((-1) ** h * factorial(l), factorial(h) * 2**h)


def hermite_norm_sq(l: int) -> Fraction:
    if l < 0:
        raise ValueError("Hermite index must be nonnegative")
    return Fraction(factorial(l))


class HermiteExpansion:
    """A polynomial written as ``sum_l coeffs[l] * H_l``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, l: int):
        if 0 <= l < len(self.coeffs):
            return self.coeffs[l]
        return ZERO

    def __eq__(self, other):
        if not isinstance(other, HermiteExpansion):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"HermiteExpansion({list(self.coeffs)!r})"

    def to_polynomial(self) -> Polynomial:
        return from_hermite(self)


def to_hermite(p: Polynomial) -> HermiteExpansion:
    """Change to the Hermite basis by peeling off the leading term, top degree first."""
    remainder = p
    out = [None] * (p.degree + 1)
    for d in range(p.degree, -1, -1):
        c = remainder[d]
        out[d] = c
        if c:
            remainder = remainder - c * _hermite_like(d, c)
    if remainder.coeffs:
        raise ArithmeticError("Hermite elimination left a remainder")
    return HermiteExpansion(out)


def from_hermite(e: HermiteExpansion) -> Polynomial:
    acc = Polynomial()
    for l, c in enumerate(e.coeffs):
        if c:
            acc = acc + c * _hermite_like(l, c)
    return acc


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def multiplication_expand(l: int, N: int) -> dict[tuple[int, ...], object]:
    """Weights ``l! / (N^(l/2) prod l_i!)`` of the multiplication formula.

    ``H_l(x_1 + ... + x_N) = sum over compositions (l_1..l_N) of l of
    weight * prod_i H_{l_i}(sqrt(N) x_i)``.

    Weights are exact ComplexScalars when ``N^(l/2)`` is rational (``l`` even or
    ``N`` a perfect square), floats otherwise.
    """
    if l < 0 or N < 1:
        raise ValueError("need l >= 0 and N >= 1")
    if l % 2 == 0:
        scale = Fraction(1, N ** (l // 2))
    elif _is_square(N):
        scale = Fraction(1, math.isqrt(N) ** l)
    else:
        scale = N ** (-l / 2)
    lf = factorial(l)
    weights = {}
    for comp in compositions(l, N):
        denom = 1
        for li in comp:
            denom *= factorial(li)
        weights[comp] = as_scalar(scale * Fraction(lf, denom))
    return weights


def multiplication_sides(l: int, N: int) -> tuple[MultiPolynomial, MultiPolynomial]:
    """Both sides of the multiplication formula expanded in monomials of ``x_1..x_N``.

    Exact for perfect-square ``N``; otherwise evaluated with float ``sqrt(N)``.
    """
    exact = _is_square(N)
    root = Fraction(math.isqrt(N)) if exact else math.sqrt(N)
    lhs = compose_with_multi(hermite_polynomial(l), sum_of_variables(N))
    if not exact:
        lhs = MultiPolynomial(N, {e: complex(c) for e, c in lhs.terms.items()})
    scaled = []
    for k in range(l + 1):
        h = hermite_polynomial(k)
        h = h.scale_arg(root) if exact else h.to_float().scale_arg(root)
        scaled.append(h)
    rhs = MultiPolynomial(N)
    for comp, w in multiplication_expand(l, N).items():
        term = MultiPolynomial.constant(N, ONE if exact else 1 + 0j)
        for i, li in enumerate(comp):
            if li:
                term = term * univariate_in(scaled[li], N, i)
        rhs = rhs + term.scale(w if exact else complex(w))
    return lhs, rhs


def generating_partial_sum(t: complex, x: complex, L: int) -> complex:
    """``sum_{l <= L} t^l H_l(x) / l!`` in floating point."""
    total = 0j
    h_prev, h = 0j, 1 + 0j
    coef = 1 + 0j
    for l in range(L + 1):
        if l > 0:
            h_prev, h = h, x * h - (l - 1) * h_prev
            coef *= t / l
        total += coef * h
    return total


def generating_function(t: complex, x: complex) -> complex:
    return cmath.exp(x * t - t * t / 2)


def integral_representation(l: int) -> Polynomial:
    """``int (x + i y)^l dgamma(y)`` expanded exactly in powers of ``x``."""
    coeffs = []
    for k in range(l + 1):
        j = l - k  # power of (i y)
        c = math.comb(l, k) * gaussian_moment(j)
        coeffs.append(ComplexScalar(c) * I**j)
    return Polynomial(coeffs)


def hermite_table(L: int) -> list[tuple[int, Polynomial, Fraction]]:
    """Rows ``(l, H_l, H_l(0))`` for ``l <= L``."""
    return [(l, hermite_polynomial(l), hermite_at_zero(l)) for l in range(L + 1)]
