"""The operator CLT on the two-point space {-1, 1}.

Beckner's operator f -> E f + omega x E[x f] is tensorized over N coordinates
and rescaled by sqrt(N).  Its Hermite coefficients converge to those of the
Hermite semigroup T_omega, and here every step is an exact rational.
"""
from fractions import Fraction

from opclt.algebra import ComplexScalar
from opclt.clt_engine import convergence_table, finite_n_bruteforce, finite_n_coefficient, limit_table, solve_params
from opclt.hypercontractivity import tensor_grid_coefficient
from opclt.measures import two_point_measure
from opclt.operators import check_hypotheses, k_matrix, semigroup_operator

mu = two_point_measure()
omega = ComplexScalar(0, Fraction(1, 2))
K = semigroup_operator(mu, omega, cutoff=6)
km = k_matrix(K, mu)

print("K-matrix corner:")
for l in range(3):
    print("  ", [str(km[l, m]) for m in range(3)])
print("hypotheses:", check_hypotheses(km).ok)

gp = solve_params(km[0, 2], km[2, 0], km[1, 1])
print(f"limit operator: tau={gp.tau}, omega={gp.omega}, lambda={gp.lam}")

# c_{2,2}(N) = -(N-1)/(2N) on the nose, so the gap to -1/2 is exactly 1/(2N)
print("\n   N   c22(N)          c22(N) - limit")
for row in convergence_table(km, 2, 2, [1, 2, 3, 10, 100, 10**4]):
    print(f"{row.N:>6}   {str(row.value):<14}  {row.difference}")

# Three independent routes to the same finite-N number
N = 5
print(f"\nN={N}, l=m=2:")
print("  partition matrices :", finite_n_coefficient(km, 2, 2, N))
print("  composition sum    :", finite_n_bruteforce(km, 2, 2, N))
print("  2^N grid summation :", tensor_grid_coefficient(K, mu, 2, 2, N))

tab = limit_table(km, 4)
print("\nlimit table (diagonal omega^l l!):")
for l in range(5):
    print("  ", [str(tab[l, m]) for m in range(5)])
