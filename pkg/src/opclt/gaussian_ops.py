"""Centered Gaussian operators ``C = M_tau T_omega S_lambda`` and their kernels.

* ``S_lambda f(x) = f(lambda x)``
* ``T_omega H_l = omega^l H_l``
* ``M_tau f(x) = sqrt(1 + tau) exp(-tau x^2 / 2) f(x)``

Every such operator is an integral operator against ``dgamma`` with kernel
``exp(-A x^2/2 - B y^2/2 + C x y + D)``.
"""
from __future__ import annotations

import cmath
from math import comb
from dataclasses import dataclass

from .algebra import (
    ONE,
    ComplexScalar,
    Polynomial,
    as_scalar,
    canonical_sign,
    double_factorial,
    is_exact,
    principal_sqrt,
)
from .clt_engine import CoefficientTable, GaussianParams
from .hermite import HermiteExpansion, from_hermite, hermite_polynomial, to_hermite
from .measures import gaussian_moment
from .operators import HypothesisViolation


class DegenerateComposition(ValueError):
    pass


class DegenerateKernel(ValueError):
    pass


class DivergentIntegral(ValueError):
    pass


class InconsistentKernel(ValueError):
    pass


@dataclass(frozen=True)
class GaussianPolynomial:
    """``prefactor * exp(-tau x^2 / 2) * poly(x)``.

    ``prefactor=None`` stands for the ``sqrt(1 + tau)`` normalization of
    ``M_tau``; keeping it symbolic lets Gaussian integrals stay exact.
    """

    tau: object
    poly: Polynomial
    prefactor: object = None

    @classmethod
    def plain(cls, p: Polynomial) -> "GaussianPolynomial":
        return cls(ComplexScalar(0), p, None)

    def prefactor_value(self):
        if self.prefactor is not None:
            return self.prefactor
        return principal_sqrt(1 + self.tau)

    def __call__(self, x: complex) -> complex:
        tau = complex(self.tau)
        return complex(self.prefactor_value()) * cmath.exp(-tau * x * x / 2) * self.poly.to_float()(x)

    def as_polynomial(self) -> Polynomial:
        if self.tau != 0 or (self.prefactor is not None and self.prefactor != 1):
            raise ValueError("not a plain polynomial")
        return self.poly


def apply_T(e: HermiteExpansion, omega) -> HermiteExpansion:
    omega = as_scalar(omega)
    if is_exact(omega):
        return HermiteExpansion([c * omega**l for l, c in enumerate(e.coeffs)])
    return HermiteExpansion([complex(c) * omega**l for l, c in enumerate(e.coeffs)])


def apply_S(f: Polynomial, lam) -> Polynomial:
    return f.scale_arg(lam)


def _match(p: Polynomial, *scalars) -> Polynomial:
    if p.is_exact and not all(is_exact(s) for s in scalars):
        return p.to_float()
    return p


def apply_C(gp: GaussianParams, f: Polynomial) -> GaussianPolynomial:
    """``M_tau T_omega S_lambda f`` with the polynomial part in monomials."""
    f = _match(f, gp.lam)
    scaled = apply_S(f, gp.lam)
    poly = from_hermite(apply_T(to_hermite(scaled), gp.omega))
    if not gp.exact:
        poly = poly.to_float() if poly.is_exact else poly
    return GaussianPolynomial(gp.tau, poly, None)


def inner_product_gamma(g: GaussianPolynomial, q: Polynomial):
    """``int g(x) q(x) dgamma(x)`` in closed form.

    Uses ``int x^k exp(-tau x^2/2) dgamma = (1+tau)^(-(k+1)/2) (k-1)!!`` for
    even ``k``.  With the symbolic ``sqrt(1+tau)`` prefactor only integer
    powers of ``(1+tau)`` survive, so exact inputs give exact output.
    """
    tau = g.tau
    one_plus = 1 + tau
    if (one_plus.re if type(one_plus) is ComplexScalar else complex(one_plus).real) <= 0:
        raise DivergentIntegral("need Re(1 + tau) > 0 for a convergent Gaussian integral")
    r = g.poly * _match(q, tau)
    if not r.is_exact:
        one_plus = complex(one_plus)
    inv = 1 / one_plus
    total = 0 * (ONE if r.is_exact else 1 + 0j)
    power = ONE if r.is_exact else 1 + 0j  # (1 + tau)^(-k/2) for even k
    for k in range(0, len(r.coeffs), 2):
        c = r.coeffs[k]
        if c:
            total = total + c * power * double_factorial(k - 1)
        power = power * inv
    if g.prefactor is None:
        return total
    # explicit prefactor: multiply by prefactor / sqrt(1 + tau)
    root = principal_sqrt(one_plus)
    if is_exact(root) and is_exact(g.prefactor) and is_exact(total):
        return total * as_scalar(g.prefactor) / root
    return complex(total) * complex(g.prefactor) / complex(root)


def coefficients_direct(gp: GaussianParams, cutoff: int) -> CoefficientTable:
    """``c_{l,m} = int C(H_l) H_m dgamma`` computed by Gaussian integrals."""
    images = [apply_C(gp, hermite_polynomial(l)) for l in range(cutoff + 1)]
    vals = tuple(
        tuple(inner_product_gamma(images[l], hermite_polynomial(m)) for m in range(cutoff + 1))
        for l in range(cutoff + 1)
    )
    return CoefficientTable(vals, "limit")


def compose_ts(omega, lam):
    """Return ``(b, a)`` with ``T_omega S_lam = S_b T_a``.

    ``a`` is the principal root of ``1 - lam^2 (1 - omega^2)`` and ``b = omega lam / a``.
    """
    omega, lam = as_scalar(omega), as_scalar(lam)
    if not (is_exact(omega) and is_exact(lam)):
        omega, lam = complex(omega), complex(lam)
    a2 = 1 - lam * lam * (1 - omega * omega)
    if not a2:
        raise DegenerateComposition("lam^2 (1 - omega^2) = 1 leaves no S_b T_a form")
    a = principal_sqrt(a2)
    if not is_exact(a):
        omega, lam = complex(omega), complex(lam)
    return omega * lam / a, a


@dataclass(frozen=True)
class GaussianKernelParams:
    A: object
    B: object
    C: object
    D: complex

    def kernel(self, x: complex, y: complex) -> complex:
        A, B, C = complex(self.A), complex(self.B), complex(self.C)
        return cmath.exp(-A * x * x / 2 - B * y * y / 2 + C * x * y + self.D)


def kernel_params(gp: GaussianParams) -> GaussianKernelParams:
    """Kernel of ``M_tau T_omega S_lambda`` against ``dgamma``.

    ``A``, ``B``, ``C`` are exact for exact parameters.  ``D`` is a float
    with ``exp(D) = sqrt(1+tau) / (lam sqrt(1-omega^2))`` on principal roots,
    ``lam`` in canonical sign, so that ``exp(2D) = (1+tau)/(lam^2 (1-omega^2))``.
    """
    tau, omega, lam = gp.tau, gp.omega, gp.lam
    s = 1 - omega * omega
    if not lam or not s:
        raise DegenerateKernel("S_0 and T_{+-1} have no kernel of this form")
    A = (tau + (1 - tau) * omega * omega) / s
    B = (1 - lam * lam * s) / (lam * lam * s)
    C = omega / (lam * s)
    D = 0.5 * cmath.log(complex(1 + tau)) - cmath.log(complex(lam)) - 0.5 * cmath.log(complex(s))
    return GaussianKernelParams(A, B, C, D)


def params_from_kernel(A, B, C, D=None, tol: float = 1e-10) -> GaussianParams:
    """Invert ``kernel_params`` on ``(A, B, C)``.

    ``omega^2 = C^2/(1+B+C^2)``, ``lam^2 = (1+B+C^2)/(1+B)^2``,
    ``tau = A - C^2/(1+B)``; the sign of ``omega`` follows from ``C``.
    A supplied ``D`` is checked against the reconstructed one.
    """
    A, B, C = (as_scalar(v) for v in (A, B, C))
    if not all(is_exact(v) for v in (A, B, C)):
        A, B, C = (complex(v) for v in (A, B, C))
    one_b = 1 + B
    total = one_b + C * C
    if not one_b or not total:
        raise DegenerateKernel("need 1 + B != 0 and 1 + B + C^2 != 0")
    tau = A - C * C / one_b
    if (tau.re if type(tau) is ComplexScalar else tau.real) <= -1:
        raise HypothesisViolation("kernel gives Re tau <= -1")
    lam = canonical_sign(principal_sqrt(total / (one_b * one_b)))
    if not is_exact(lam):
        tau, C, one_b, total = complex(tau), complex(C), complex(one_b), complex(total)
    s = one_b / total  # 1 - omega^2
    omega = C * lam * s
    gp = GaussianParams(tau, omega, lam)
    if D is not None:
        got = kernel_params(gp).D
        diff = complex(D) - got
        # D is defined up to multiples of 2 pi i
        k = round(diff.imag / (2 * cmath.pi))
        if abs(diff - 2j * cmath.pi * k) > tol * max(1.0, abs(got)):
            raise InconsistentKernel(f"supplied D={D} disagrees with reconstructed D={got}")
    return gp


def kernel_apply_numeric(kp: GaussianKernelParams, f: Polynomial, x: complex) -> complex:
    """``int G(x, y) f(y) dgamma(y)`` by completing the square in ``y``.

    With ``alpha = 1 + B`` and ``mu = C x / alpha``, the ``y``-integral is
    ``alpha^(-1/2) exp(C^2 x^2 / (2 alpha)) E[f(mu + Z / sqrt(alpha))]``,
    ``Z`` standard normal, and the expectation expands into Gaussian moments.
    """
    A, B, C = complex(kp.A), complex(kp.B), complex(kp.C)
    alpha = 1 + B
    if alpha.real <= 0:
        raise DivergentIntegral("need Re(1 + B) > 0")
    x = complex(x)
    mu = C * x / alpha
    inv_alpha = 1 / alpha
    g = f.to_float()
    total = 0j
    for k, c in enumerate(g.coeffs):
        if not c:
            continue
        # E[(mu + Z/sqrt(alpha))^k] uses only even powers of Z
        acc = 0j
        for j in range(0, k + 1, 2):
            acc += comb(k, j) * mu ** (k - j) * inv_alpha ** (j // 2) * gaussian_moment(j)
        total += c * acc
    pref = cmath.exp(kp.D - A * x * x / 2 + C * C * x * x / (2 * alpha)) / cmath.sqrt(alpha)
    return pref * total


def evaluate_C(gp: GaussianParams, f: Polynomial, x: complex) -> complex:
    return apply_C(gp, f)(x)
