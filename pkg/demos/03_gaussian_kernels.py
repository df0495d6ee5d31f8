"""Centered Gaussian operators M_tau T_omega S_lambda and their integral kernels."""
from fractions import Fraction

import numpy as np

from opclt.clt_engine import GaussianParams
from opclt.gaussian_ops import (
    apply_C,
    coefficients_direct,
    compose_ts,
    kernel_apply_numeric,
    kernel_params,
    params_from_kernel,
)
from opclt.hermite import hermite_polynomial

# The Mehler case: tau = 0, lambda = 1
kp = kernel_params(GaussianParams(0, Fraction(1, 2), 1))
print(f"Mehler, omega=1/2: A={kp.A}  B={kp.B}  C={kp.C}  exp(D)={np.exp(kp.D):.6f}")
print("back to parameters:", params_from_kernel(kp.A, kp.B, kp.C))

# Applying T_{1/2} to H_3 at 0.7 two ways: Hermite action vs kernel integral
h3 = hermite_polynomial(3)
print("T_{1/2} H_3 (0.7):", apply_C(GaussianParams(0, Fraction(1, 2), 1), h3)(0.7), kernel_apply_numeric(kp, h3, 0.7))

# A non-trivial operator: Hermite coefficients by exact Gaussian integrals
gp = GaussianParams(Fraction(1, 3), Fraction(1, 2), 2)
tab = coefficients_direct(gp, 4)
print("\nc_{l,m} for tau=1/3, omega=1/2, lambda=2:")
for l in range(5):
    print("  ", [str(tab[l, m]) for m in range(5)])

# Dilation and semigroup commute up to a change of parameters
b, a = compose_ts(Fraction(4, 5), Fraction(4, 3))
print(f"\nT_(4/5) S_(4/3) = S_b T_a with b = {b}, a = {a}")

# Random complex parameters: kernel form agrees with the operator form
rng = np.random.default_rng(1)
for _ in range(3):
    gp = GaussianParams(complex(rng.uniform(-0.3, 0.5), 0.1), complex(*rng.uniform(-0.6, 0.6, 2)), 1.1 - 0.1j)
    kp = kernel_params(gp)
    x = 0.4
    f = hermite_polynomial(4)
    print(f"  |difference| = {abs(apply_C(gp, f)(x) - kernel_apply_numeric(kp, f, x)):.2e}")
