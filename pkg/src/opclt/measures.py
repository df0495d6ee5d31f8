"""Standardized probability measures described by exact moments.

A :class:`Measure` is one of three kinds:

* ``"atomic"``: finitely many rational atoms with rational weights;
* ``"gaussian"``: the standard normal distribution;
* ``"moments"``: an explicit finite list of rational moments.

All integrals the package needs are integrals of polynomials, so moments are
the whole story.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import ComplexScalar, Polynomial, format_rational, parse_rational


class MeasureError(ValueError):
    pass


class NonStandardized(MeasureError):
    """Mean is not 0 or variance is not 1."""


class BadWeights(MeasureError):
    pass


class DuplicateAtoms(MeasureError):
    pass


class DegenerateHankel(MeasureError):
    """No orthogonal polynomial of the requested degree (finite support exhausted)."""


class NotAtomic(MeasureError):
    pass


class MomentOutOfRange(MeasureError):
    pass


@lru_cache(maxsize=None)
def gaussian_moment(k: int) -> int:
    """``(k-1)!!`` for even ``k``, zero for odd ``k``."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2:
        return 0
    out = 1
    for j in range(k - 1, 0, -2):
        out *= j
    return out


class Measure:
    """Immutable probability measure on the real line.

    Construct through :func:`make_atomic`, :func:`gaussian`,
    :func:`from_moments` or :func:`two_point_measure`.
    """

    __slots__ = ("kind", "atoms", "_moments")

    def __init__(self, kind: str, atoms=None, moments=None):
        self.kind = kind
        self.atoms: tuple[tuple[Fraction, Fraction], ...] | None = atoms
        self._moments: tuple[Fraction, ...] | None = moments

    def moment(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("moment order must be nonnegative")
        if self.kind == "gaussian":
            return Fraction(gaussian_moment(k))
        if self.kind == "atomic":
            return _atomic_moment(self.atoms, k)
        if k >= len(self._moments):
            raise MomentOutOfRange(f"moment {k} requested, only {len(self._moments)} supplied")
        return self._moments[k]

    @property
    def max_moment(self) -> float:
        """Highest available moment index (``inf`` unless moment-defined)."""
        if self.kind == "moments":
            return len(self._moments) - 1
        return math.inf

    @property
    def rank(self) -> float:
        """Dimension of the polynomial space in L^2(mu); ``inf`` if unbounded."""
        if self.kind == "atomic":
            return len(self.atoms)
        if self.kind == "gaussian":
            return math.inf
        minors = hankel_minors(self, (len(self._moments) - 1) // 2)
        for r, d in enumerate(minors):
            if d == 0:
                return r
        return math.inf

    def is_atomic(self) -> bool:
        return self.kind == "atomic"

    def support(self) -> np.ndarray:
        if self.kind != "atomic":
            raise NotAtomic(f"{self.kind} measure has no finite support")
        return np.array([float(x) for x, _ in self.atoms])

    def weights(self) -> np.ndarray:
        if self.kind != "atomic":
            raise NotAtomic(f"{self.kind} measure has no finite support")
        return np.array([float(w) for _, w in self.atoms])

    def to_json(self) -> dict:
        if self.kind == "gaussian":
            return {"type": "gaussian"}
        if self.kind == "atomic":
            return {
                "type": "atomic",
                "atoms": [{"x": format_rational(x), "w": format_rational(w)} for x, w in self.atoms],
            }
        return {"type": "moments", "moments": [format_rational(m) for m in self._moments]}

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return (self.kind, self.atoms, self._moments) == (other.kind, other.atoms, other._moments)

    def __hash__(self):
        return hash((self.kind, self.atoms, self._moments))

    def __repr__(self):
        if self.kind == "atomic":
            body = ", ".join(f"({format_rational(x)}, {format_rational(w)})" for x, w in self.atoms)
            return f"Measure(atomic: {body})"
        if self.kind == "gaussian":
            return "Measure(gaussian)"
        return f"Measure(moments: {len(self._moments)} given)"


@lru_cache(maxsize=4096)
def _atomic_moment(atoms, k: int) -> Fraction:
    return sum((w * x**k for x, w in atoms), Fraction(0))


def _check_standardized(m0, m1, m2):
    if m0 != 1:
        raise BadWeights(f"total mass is {m0}, expected 1")
    if m1 != 0:
        raise NonStandardized(f"mean is {m1}, a standardized measure has zero mean")
    if m2 != 1:
        raise NonStandardized(f"variance is {m2}, a standardized measure has unit variance")


def make_atomic(atoms: Iterable) -> Measure:
    """Validated atomic measure from ``(x, w)`` pairs or ``{"x":..., "w":...}`` dicts."""
    parsed = []
    for a in atoms:
        if isinstance(a, dict):
            x, w = a["x"], a["w"]
        else:
            x, w = a
        parsed.append((parse_rational(x), parse_rational(w)))
    if not parsed:
        raise BadWeights("no atoms given")
    xs = [x for x, _ in parsed]
    if len(set(xs)) != len(xs):
        raise DuplicateAtoms("atoms must be distinct")
    if any(w <= 0 for _, w in parsed):
        raise BadWeights("weights must be positive")
    total = sum(w for _, w in parsed)
    if total != 1:
        raise BadWeights(f"weights sum to {total}, expected 1")
    atoms_t = tuple(sorted(parsed))
    _check_standardized(
        total,
        sum(w * x for x, w in atoms_t),
        sum(w * x * x for x, w in atoms_t),
    )
    return Measure("atomic", atoms=atoms_t)


def gaussian() -> Measure:
    return Measure("gaussian")


def two_point_measure() -> Measure:
    """Uniform measure on ``{-1, 1}``."""
    return make_atomic([(-1, Fraction(1, 2)), (1, Fraction(1, 2))])


def from_moments(moments: Sequence) -> Measure:
    """Moment-defined measure; checks standardization and Hankel positivity up to the given length."""
    ms = tuple(parse_rational(m) for m in moments)
    if len(ms) < 3:
        raise MomentOutOfRange("need at least moments m_0, m_1, m_2")
    _check_standardized(ms[0], ms[1], ms[2])
    mu = Measure("moments", moments=ms)
    minors = hankel_minors(mu, (len(ms) - 1) // 2)
    seen_zero = False
    for r, d in enumerate(minors):
        if d < 0 or (seen_zero and d != 0):
            raise MeasureError(f"Hankel matrix of order {r} is not positive semidefinite")
        seen_zero = seen_zero or d == 0
    return mu


def measure_from_json(obj: dict) -> Measure:
    kind = obj.get("type")
    if kind == "atomic":
        return make_atomic(obj["atoms"])
    if kind == "gaussian":
        return gaussian()
    if kind == "moments":
        return from_moments(obj["moments"])
    raise MeasureError(f"unknown measure type {kind!r}")


def moment(mu: Measure, k: int) -> Fraction:
    return mu.moment(k)


def integrate_poly(mu: Measure, p: Polynomial):
    """``int p dmu`` as the linear extension of the moments.

    Exact (``ComplexScalar``) for exact ``p``, ``complex`` for float ``p``.
    """
    if not p.is_exact:
        return sum((c * mu.moment(k) for k, c in enumerate(p.coeffs) if c), 0j)
    re = Fraction(0)
    im = Fraction(0)
    for k, c in enumerate(p.coeffs):
        if c:
            m = mu.moment(k)
            re += c.re * m
            im += c.im * m
    return ComplexScalar(re, im)


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-preserving Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact solve; None if singular."""
    n = len(matrix)
    a = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n] for row in a]


def hankel_minors(mu: Measure, r: int) -> list[Fraction]:
    """Leading principal minors ``det [m_{i+j}]_{0<=i,j<=k}`` for ``k = 0..r``."""
    out = []
    for k in range(r + 1):
        out.append(_det([[mu.moment(i + j) for j in range(k + 1)] for i in range(k + 1)]))
    return out


def orthogonal_polynomial(mu: Measure, l: int, allow_null: bool = False) -> Polynomial:
    """Monic ``P_l`` with ``int P_l x^j dmu = 0`` for ``j < l``.

    Found by solving the Gram (Hankel) system exactly.  Once ``l`` reaches the
    number of atoms the solution has zero norm in ``L^2(mu)``; by default that
    raises :class:`DegenerateHankel`, and ``allow_null=True`` returns the
    monic polynomial vanishing on the support instead.
    """
    if l < 0:
        raise ValueError("degree must be nonnegative")
    if l == 0:
        return Polynomial([1])
    gram = [[mu.moment(i + j) for j in range(l)] for i in range(l)]
    rhs = [-mu.moment(i + l) for i in range(l)]
    sol = _solve(gram, rhs)
    if sol is None:
        raise DegenerateHankel(f"measure supports no orthogonal polynomial of degree {l}")
    p = Polynomial(sol + [1])
    if not allow_null:
        norm = integrate_poly(mu, p * p)
        if norm == 0:
            raise DegenerateHankel(
                f"degree-{l} orthogonal polynomial vanishes on the support of the measure"
            )
    return p


def _weighted_lp(weights: np.ndarray, values: np.ndarray, p: float) -> np.ndarray:
    """``(sum_i w_i |v_i|^p)^(1/p)`` along the last axis."""
    return np.sum(weights * np.abs(values) ** p, axis=-1) ** (1.0 / p)


def lp_norm(mu: Measure, f: Polynomial, p: float) -> float:
    if mu.kind != "atomic":
        raise NotAtomic("L^p norms are computed by finite sums over atoms only")
    if p <= 0:
        raise ValueError("p must be positive")
    g = f.to_float()
    values = np.array([g(complex(x)) for x in mu.support()])
    return float(_weighted_lp(mu.weights(), values, p))
