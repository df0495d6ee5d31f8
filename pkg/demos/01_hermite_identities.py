"""Hermite polynomials in exact arithmetic: recursion, norms and the multiplication formula."""
from fractions import Fraction

from opclt.algebra import Polynomial
from opclt.hermite import hermite_at_zero, hermite_polynomial, multiplication_expand, multiplication_sides, to_hermite
from opclt.measures import gaussian, integrate_poly

# The first few, straight from H_{l+1} = x H_l - l H_{l-1}
for l in range(7):
    print(f"H_{l}(x) = {hermite_polynomial(l)}    H_{l}(0) = {hermite_at_zero(l)}")

# Orthogonality against the standard normal, computed from its moments (k-1)!!
g = gaussian()
gram = [[integrate_poly(g, hermite_polynomial(l) * hermite_polynomial(m)) for m in range(5)] for l in range(5)]
print("\nGram matrix of H_0..H_4:")
for row in gram:
    print("  ", [str(v) for v in row])

# Change of basis both ways
p = Polynomial([Fraction(1, 2), 0, 3, 0, 1])
print(f"\n{p} = " + " + ".join(f"({c})*H_{k}" for k, c in enumerate(to_hermite(p).coeffs) if c))

# H_l of a sum of N variables splits into scaled one-variable pieces.
# With N = 4 the scale sqrt(N) = 2 is rational so both sides are compared exactly.
w = multiplication_expand(2, 2)
print("\nweights for l=2, N=2:", {k: str(v) for k, v in w.items()})
for l in range(5):
    lhs, rhs = multiplication_sides(l, 4)
    print(f"l={l}, N=4: sides equal -> {lhs == rhs}  ({len(lhs.terms)} monomials)")
