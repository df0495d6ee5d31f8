"""From a two-point inequality to Gaussian hypercontractivity.

A contraction L^p -> L^q for K_omega on a small atomic space survives
tensorization, and the CLT hands it to T_omega on Gaussian space.  Epperson's
condition says exactly when T_omega contracts; the numbers below check the
two sides agree.
"""
import math

from opclt.hypercontractivity import ExponentPair, epperson_ok, tensor_contraction_check, transference_demo, two_point_ratio_scan
from opclt.measures import two_point_measure
from opclt.operators import semigroup_operator

mu = two_point_measure()

# The sharp Hausdorff-Young family (p, p', i sqrt(p-1)) sits on the boundary
print("  p      q       slack        max ratio (1e4 grid)")
for p in (1.25, 1.5, 2.0):
    pq = ExponentPair.conjugate(p)
    w = 1j * math.sqrt(p - 1)
    ok, slack = epperson_ok(pq, w)
    scan = two_point_ratio_scan(pq, w)
    print(f"  {p:<5}  {pq.q:<6.3f}  {slack:+.2e}   {scan.max_ratio:.12f}")

# Tensor powers: random complex polynomials on {-1,1}^N
pq = ExponentPair.conjugate(1.5)
K = semigroup_operator(mu, 1j * math.sqrt(0.5), 2)
for N in (2, 3):
    print(f"N={N}: worst ratio over 500 random f = {tensor_contraction_check(K, mu, mu, pq, N, 500, seed=0):.6f}")

# The failing side: omega = 2 blows up f = x
print("\nomega=2, p=q=2:", transference_demo(mu, 2, ExponentPair(2, 2)).to_json())
