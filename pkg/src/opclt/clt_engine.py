"""Finite-N tensorized coefficients, their limits, and the limit operator's parameters.

For a K-matrix against a standardized measure, the coefficient

    c_{l,m}(N) = int K_N([H_l]_+) [H_m]_+ dalpha_N(sqrt(N) x)

equals ``l! m! / N^((l+m)/2)`` times a sum over compositions of ``l`` and
``m`` into ``N`` parts.  Grouping equal factors turns that sum into a sum over
"partition matrices" whose number does not depend on ``N``; the limit keeps
only matrices supported on the cells (0,2), (2,0), (1,1).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    ONE,
    ZERO,
    ComplexScalar,
    as_scalar,
    canonical_sign,
    exact_sqrt,
    factorial,
    falling_factorial,
    is_exact,
)
from .operators import CutoffTooSmall, HypothesisViolation, KMatrix, require_hypotheses


class DegenerateSystem(ValueError):
    """``lambda^2 = 0`` while ``K_{1,1} != 0``: no finite triple reproduces the limit."""


def _re(z) -> float | Fraction:
    return z.re if type(z) is ComplexScalar else complex(z).real


@dataclass(frozen=True)
class GaussianParams:
    """Parameters of ``M_tau T_omega S_lambda``.

    The constructor enforces ``Re tau > -1`` and picks the canonical member
    of ``{(tau, omega, lam), (tau, -omega, -lam)}`` (``Re lam > 0``, or
    ``Re lam = 0`` and ``Im lam >= 0``).  Exact inputs stay exact; a single
    float entry turns the whole triple into floats.
    """

    tau: object
    omega: object
    lam: object

    def __post_init__(self):
        vals = [as_scalar(v) for v in (self.tau, self.omega, self.lam)]
        if not all(is_exact(v) for v in vals):
            vals = [complex(v) for v in vals]
        tau, omega, lam = vals
        if _re(tau) <= -1:
            raise HypothesisViolation(f"Re tau must exceed -1, got {_re(tau)}")
        canon = canonical_sign(lam)
        if canon != lam:
            lam, omega = canon, -omega
        if not lam:
            omega = ZERO if is_exact(omega) else 0j
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "lam", lam)

    @property
    def exact(self) -> bool:
        return type(self.tau) is ComplexScalar

    def to_float(self) -> "GaussianParams":
        return GaussianParams(complex(self.tau), complex(self.omega), complex(self.lam))

    def to_json(self) -> dict:
        def enc(v):
            return v.to_json() if type(v) is ComplexScalar else {"re": repr(v.real), "im": repr(v.imag)}

        return {"tau": enc(self.tau), "omega": enc(self.omega), "lambda": enc(self.lam), "exact": self.exact}


def solve_params(K02, K20, K11) -> GaussianParams:
    """Solve ``tau = -K02/(1+K02)``, ``lam^2 = 1 + K20 + tau(1+tau) K11^2``, ``lam*omega = (1+tau) K11``.

    Exact whenever ``lam^2`` has an exact complex-rational square root.
    """
    K02, K20, K11 = (as_scalar(v) for v in (K02, K20, K11))
    if not all(is_exact(v) for v in (K02, K20, K11)):
        K02, K20, K11 = (complex(v) for v in (K02, K20, K11))
    if _re(K02) <= -1:
        raise HypothesisViolation(f"need Re K_{{0,2}} > -1, got {_re(K02)}")
    tau = -K02 / (1 + K02)
    lam2 = 1 + K20 + tau * (1 + tau) * K11 * K11
    if is_exact(lam2):
        lam = exact_sqrt(lam2)
        if lam is None:
            tau, lam2, K11 = complex(tau), complex(lam2), complex(K11)
            lam = cmath.sqrt(lam2)
    else:
        lam = cmath.sqrt(lam2)
    lam = canonical_sign(lam)
    if not lam:
        if K11:
            raise DegenerateSystem("lambda^2 = 0 but K_{1,1} != 0")
        return GaussianParams(tau, 0 * lam, lam)
    omega = (1 + tau) * K11 / lam
    return GaussianParams(tau, omega, lam)


def params_from_kmatrix(km: KMatrix) -> GaussianParams:
    require_hypotheses(km)
    return solve_params(km[0, 2], km[2, 0], km[1, 1])


def _unit(z):
    return ONE if is_exact(z) else 1 + 0j


def limit_coefficient(K02, K20, K11, l: int, m: int):
    """Closed-form limit ``c_{l,m}`` written in the K-matrix entries.

    ``l! m! sum_{n even <= l^m} K11^(l^m - n) K20^((l v m - m + n)/2) K02^((l v m - l + n)/2)
    / (2^(|l-m|/2 + n) (l^m - n)! (n/2)! ((|l-m| + n)/2)!)``
    """
    K02, K20, K11 = (as_scalar(v) for v in (K02, K20, K11))
    if not all(is_exact(v) for v in (K02, K20, K11)):
        K02, K20, K11 = (complex(v) for v in (K02, K20, K11))
    if (l + m) % 2:
        return 0 * _unit(K11)
    lo, hi, d = min(l, m), max(l, m), abs(l - m)
    total = 0 * _unit(K11)
    for n in range(0, lo + 1, 2):
        num = K11 ** (lo - n) * K20 ** ((hi - m + n) // 2) * K02 ** ((hi - l + n) // 2)
        den = 2 ** (d // 2 + n) * factorial(lo - n) * factorial(n // 2) * factorial((d + n) // 2)
        total = total + num * Fraction(1, den)
    return total * (factorial(l) * factorial(m))


def coefficient_from_triple(tau, omega, lam, l: int, m: int):
    """``c_{l,m}`` of ``M_tau T_omega S_lam`` in the closed form over the parameters.

    Uses ``x = -tau/(tau+1)``, ``a = 1 - lam^2 + lam^2 omega^2 tau/(tau+1)`` and
    ``b = lam omega/(tau+1)``; does not canonicalize the sign of ``lam``.
    """
    vals = [as_scalar(v) for v in (tau, omega, lam)]
    if not all(is_exact(v) for v in vals):
        vals = [complex(v) for v in vals]
    tau, omega, lam = vals
    if (l + m) % 2:
        return 0 * _unit(tau)
    r = tau / (tau + 1)
    a = 1 - lam * lam + lam * lam * omega * omega * r
    b = lam * omega / (tau + 1)
    lo, hi, d = min(l, m), max(l, m), abs(l - m)
    total = 0 * _unit(tau)
    for n in range(0, lo + 1, 2):
        num = (-r) ** ((hi - l + n) // 2) * (-a) ** ((hi - m + n) // 2) * b ** (lo - n)
        den = 2 ** (d // 2 + n) * factorial(n // 2) * factorial((d + n) // 2) * factorial(lo - n)
        total = total + num * Fraction(1, den)
    return total * (factorial(l) * factorial(m))


def limit_coefficient_from_params(gp: GaussianParams, l: int, m: int):
    return coefficient_from_triple(gp.tau, gp.omega, gp.lam, l, m)


@lru_cache(maxsize=None)
def partition_matrices(l: int, m: int) -> tuple[tuple[tuple[tuple[int, int], int], ...], ...]:
    """All nonnegative integer tables ``P[i][j]`` (``i <= l``, ``j <= m``, cell (0,0) left out)
    with ``sum i P = l`` and ``sum j P = m``.

    Each table is returned sparsely as ``((i, j), P)`` pairs for its nonzero
    cells, cells in row-major order.  The list does not depend on ``N``.
    """
    cells = [(i, j) for i in range(l + 1) for j in range(m + 1) if (i, j) != (0, 0)]
    out = []

    def descend(k, rem_l, rem_m, chosen):
        if rem_l == 0 and rem_m == 0:
            out.append(tuple(chosen))
            return
        if k == len(cells):
            return
        i, j = cells[k]
        cap = min(rem_l // i if i else rem_l + rem_m, rem_m // j if j else rem_l + rem_m)
        for p in range(cap, 0, -1):
            chosen.append(((i, j), p))
            descend(k + 1, rem_l - i * p, rem_m - j * p, chosen)
            chosen.pop()
        descend(k + 1, rem_l, rem_m, chosen)

    descend(0, l, m, [])
    return tuple(out)


def _weights(km: KMatrix, l: int, m: int):
    if km.cutoff < max(l, m):
        raise CutoffTooSmall(f"K-matrix cutoff {km.cutoff} below max(l, m) = {max(l, m)}")
    return [[km[i, j] * Fraction(1, factorial(i) * factorial(j)) for j in range(m + 1)] for i in range(l + 1)]


def _normalize(total, l: int, m: int, N: int):
    parity = (l + m) % 2
    return total * Fraction(factorial(l) * factorial(m), N ** ((l + m - parity) // 2)), parity


def finite_n_scaled(km: KMatrix, l: int, m: int, N: int):
    """Partition-matrix evaluation of ``c_{l,m}(N)`` avoiding ``sqrt(N)``.

    Returns ``(c_{l,m}(N) * sqrt(N)**parity, parity)`` with ``parity = (l+m) % 2``;
    the first entry is exact for exact K-matrices.
    """
    if N < 1:
        raise ValueError("N must be positive")
    # the N - s unused coordinates each contribute K_{0,0}, which is 1 under the hypotheses
    if km[0, 0] != 1:
        return _finite_n_general(km, l, m, N)
    w = _weights(km, l, m)
    unit = _unit(km[0, 0])
    total = 0 * unit
    for matrix in partition_matrices(l, m):
        s = 0
        denom = 1
        term = unit
        for (i, j), p in matrix:
            wij = w[i][j]
            if not wij:
                break
            s += p
            denom *= factorial(p)
            term = term * wij**p
        else:
            ff = falling_factorial(N, s)
            if ff:
                total = total + term * Fraction(ff, denom)
    return _normalize(total, l, m, N)


def _finite_n_general(km: KMatrix, l: int, m: int, N: int):
    w = _weights(km, l, m)
    k00 = w[0][0]
    total = 0 * _unit(k00)
    for matrix in partition_matrices(l, m):
        s = sum(p for _, p in matrix)
        ff = falling_factorial(N, s)
        if not ff:
            continue
        term = k00 ** (N - s)
        denom = 1
        for (i, j), p in matrix:
            term = term * w[i][j] ** p
            denom *= factorial(p)
        total = total + term * Fraction(ff, denom)
    return _normalize(total, l, m, N)


def _unscale(scaled, parity: int, N: int):
    if parity == 0 or not scaled:
        return scaled
    root = math.isqrt(N)
    if root * root == N and is_exact(scaled):
        return scaled * Fraction(1, root)
    return complex(scaled) / N**0.5


def finite_n_coefficient(km: KMatrix, l: int, m: int, N: int):
    """``c_{l,m}(N)``: exact when ``l + m`` is even, the sum vanishes or ``N`` is a square; else a complex float."""
    scaled, parity = finite_n_scaled(km, l, m, N)
    return _unscale(scaled, parity, N)


def finite_n_bruteforce_scaled(km: KMatrix, l: int, m: int, N: int):
    """Composition-sum evaluation of ``c_{l,m}(N)``, same ``(value, parity)`` convention.

    Walks all pairs of compositions ``l_1 + ... + l_N = l``, ``m_1 + ... + m_N = m``
    coordinate by coordinate, multiplying ``K[l_i][m_i] / (l_i! m_i!)``.
    Branches are cut as soon as the running product is zero.
    """
    if N < 1:
        raise ValueError("N must be positive")
    w = _weights(km, l, m)
    zero = 0 * _unit(km[0, 0])

    def walk(pos, rem_l, rem_m, acc):
        if pos == N - 1:
            f = w[rem_l][rem_m]
            return acc * f if f else zero
        total = zero
        for li in range(rem_l + 1):
            for mi in range(rem_m + 1):
                f = w[li][mi]
                if f:
                    total = total + walk(pos + 1, rem_l - li, rem_m - mi, acc * f)
        return total

    total = walk(0, l, m, _unit(km[0, 0]))
    return _normalize(total, l, m, N)


def finite_n_bruteforce(km: KMatrix, l: int, m: int, N: int):
    scaled, parity = finite_n_bruteforce_scaled(km, l, m, N)
    return _unscale(scaled, parity, N)


@dataclass(frozen=True)
class CoefficientTable:
    values: tuple
    kind: str  # "finite-N" or "limit"
    N: int | None = None

    def __getitem__(self, lm):
        l, m = lm
        return self.values[l][m]

    @property
    def cutoff(self) -> int:
        return len(self.values) - 1


def limit_table(km: KMatrix, lmax: int) -> CoefficientTable:
    K02, K20, K11 = km[0, 2], km[2, 0], km[1, 1]
    vals = tuple(tuple(limit_coefficient(K02, K20, K11, l, m) for m in range(lmax + 1)) for l in range(lmax + 1))
    return CoefficientTable(vals, "limit")


def params_table(gp: GaussianParams, lmax: int) -> CoefficientTable:
    vals = tuple(
        tuple(limit_coefficient_from_params(gp, l, m) for m in range(lmax + 1)) for l in range(lmax + 1)
    )
    return CoefficientTable(vals, "limit")


def finite_n_table(km: KMatrix, lmax: int, N: int) -> CoefficientTable:
    vals = tuple(tuple(finite_n_coefficient(km, l, m, N) for m in range(lmax + 1)) for l in range(lmax + 1))
    return CoefficientTable(vals, "finite-N", N)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    value: object
    limit: object
    difference: object

    @property
    def abs_err(self) -> float:
        return abs(complex(self.difference))


def convergence_table(km: KMatrix, l: int, m: int, Ns) -> list[ConvergenceRow]:
    """``c_{l,m}(N)`` against its limit for each ``N`` in ``Ns``."""
    require_hypotheses(km)
    limit = limit_coefficient(km[0, 2], km[2, 0], km[1, 1], l, m)
    rows = []
    for N in Ns:
        value = finite_n_coefficient(km, l, m, N)
        if is_exact(value) and is_exact(limit):
            diff = value - limit
        else:
            diff = complex(value) - complex(limit)
        rows.append(ConvergenceRow(N, value, limit, diff))
    return rows
