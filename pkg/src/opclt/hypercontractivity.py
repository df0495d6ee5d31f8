"""Numerical checks of contraction estimates on atomic spaces and their tensor powers.

Nothing here is a proof: grids and random trials certify that no violation
was found at desk scale.
"""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import ComplexScalar, MultiPolynomial, Polynomial, as_scalar, compose_with_multi, sum_of_variables
from .clt_engine import params_from_kmatrix
from .hermite import hermite_polynomial
from .measures import Measure, NotAtomic, _weighted_lp, lp_norm
from .operators import OperatorSpec, check_hypotheses, k_matrix, semigroup_operator

GOLDEN = (math.sqrt(5) - 1) / 2


def threads() -> int:
    """Parallelism cap from ``OPCLT_THREADS`` (scans here are vectorized, not threaded)."""
    try:
        return max(1, int(os.environ.get("OPCLT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("exponents must be positive")

    @classmethod
    def conjugate(cls, p: float) -> "ExponentPair":
        """``(p, p')`` with ``1/p + 1/p' = 1``."""
        if p <= 1:
            raise ValueError("conjugate exponent needs p > 1")
        return cls(p, p / (p - 1))

    def require_contraction_range(self):
        if not (1 <= self.p <= self.q < math.inf):
            raise ValueError(f"need 1 <= p <= q < inf, got p={self.p}, q={self.q}")


def epperson_ok(pq: ExponentPair, omega, tol: float = 1e-12) -> tuple[bool, float]:
    """Slack in ``|p - 2 - omega^2 (q - 2)| <= p - |omega|^2 q`` and whether it holds."""
    pq.require_contraction_range()
    w = complex(omega)
    slack = (pq.p - abs(w) ** 2 * pq.q) - abs(pq.p - 2 - w * w * (pq.q - 2))
    return slack >= -tol, slack


@dataclass
class ScanResult:
    max_ratio: float
    argmax: complex | None  # None means the pure case f = x
    grid_points: int
    refined: bool = True


def _semigroup_pair(mu: Measure, omega):
    """Values of ``K(1)`` and ``K(x)`` on the atoms, plus of ``1`` and ``x``."""
    K = semigroup_operator(mu, omega, cutoff=1)
    xs = mu.support()
    k1 = K.images[0].to_float()
    kx = K.images[1].to_float()
    return (
        np.array([k1(complex(x)) for x in xs]),
        np.array([kx(complex(x)) for x in xs]),
        np.ones_like(xs, dtype=complex),
        xs.astype(complex),
    )


def _ratio_fn(mu: Measure, omega, pq: ExponentPair):
    w = mu.weights()
    k1, kx, one, x = _semigroup_pair(mu, omega)

    def ratio(t):
        t = np.asarray(t, dtype=complex)[..., None]
        num = _weighted_lp(w, k1 + t * kx, pq.q)
        den = _weighted_lp(w, one + t * x, pq.p)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(den > 0, num / den, np.where(num > 0, np.inf, 1.0))

    def ratio_x():
        return float(_weighted_lp(w, kx, pq.q) / _weighted_lp(w, x, pq.p))

    return ratio, ratio_x


def _golden_max(f, a: float, b: float, iters: int = 60) -> tuple[float, float]:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def ratio_scan(mu: Measure, omega, pq: ExponentPair, grid: int = 100, refine: bool = True) -> ScanResult:
    """Sup of ``||K f||_q / ||f||_p`` over ``f = 1 + t x`` (complex ``t``) and ``f = x``.

    ``t = tan(phi) exp(i theta)`` on a ``grid x grid`` mesh of
    ``phi in [0, pi/2)``, ``theta in [0, 2 pi)``, followed by coordinatewise
    golden-section refinement around the best mesh point.  By homogeneity
    this family covers every ``a + b x``.
    """
    ratio, ratio_x = _ratio_fn(mu, omega, pq)
    phis = np.linspace(0.0, math.pi / 2, grid, endpoint=False)
    thetas = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    P, T = np.meshgrid(phis, thetas, indexing="ij")
    ts = np.tan(P) * np.exp(1j * T)
    vals = ratio(ts)
    k = int(np.argmax(vals))
    best, arg = float(vals.flat[k]), complex(ts.flat[k])
    if refine and grid > 1:
        i, j = np.unravel_index(k, vals.shape)
        phi, theta = float(P[i, j]), float(T[i, j])
        dphi, dtheta = phis[1] - phis[0], thetas[1] - thetas[0]
        for _ in range(3):
            lo, hi = max(0.0, phi - dphi), min(math.pi / 2 - 1e-12, phi + dphi)
            phi, v = _golden_max(lambda u: float(ratio(math.tan(u) * np.exp(1j * theta))), lo, hi)
            theta, v = _golden_max(
                lambda u: float(ratio(math.tan(phi) * np.exp(1j * u))), theta - dtheta, theta + dtheta
            )
            if v > best:
                best, arg = v, complex(math.tan(phi) * np.exp(1j * theta))
    rx = ratio_x()
    if rx > best:
        best, arg = rx, None
    return ScanResult(best, arg, grid * grid + 1, refine)


def two_point_ratio_scan(pq: ExponentPair, omega, grid: int = 100) -> ScanResult:
    from .measures import two_point_measure

    return ratio_scan(two_point_measure(), omega, pq, grid)


def ratio_for(mu: Measure, K: OperatorSpec, f: Polynomial, pq: ExponentPair) -> float:
    """``||K f||_{L^q(mu)} / ||f||_{L^p(mu)}`` through :func:`lp_norm`."""
    return lp_norm(mu, K.apply(f), pq.q) / lp_norm(mu, f, pq.p)


# tensor powers


def _float_images(K: OperatorSpec):
    return [[complex(c) for c in img.coeffs] for img in K.images]


def tensorize(K: OperatorSpec, f: MultiPolynomial, N: int | None = None) -> MultiPolynomial:
    """``K_N f = S_{sqrt N} K^{(N)} ... K^{(1)} S_{1/sqrt N} f`` for a polynomial in ``N`` variables."""
    N = f.nvars if N is None else N
    images = _float_images(K)
    root = math.sqrt(N)
    g = f.substitute_each(1 / root)
    for i in range(N):
        g = g.apply_in_variable(i, images)
    return g.substitute_each(root)


def _grid_values(f: MultiPolynomial, points: np.ndarray) -> np.ndarray:
    """Evaluate at each row of ``points`` (shape ``(n, N)``)."""
    out = np.zeros(points.shape[0], dtype=complex)
    for e, c in f.terms.items():
        term = np.full(points.shape[0], complex(c))
        for i, k in enumerate(e):
            if k:
                term = term * points[:, i] ** k
        out += term
    return out


def product_grid(mu: Measure, N: int, scale: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Atoms of ``mu^N`` (each coordinate multiplied by ``scale``) and their weights."""
    if not mu.is_atomic():
        raise NotAtomic("tensor-grid computations need an atomic measure")
    xs, ws = mu.support() * scale, mu.weights()
    idx = np.indices((len(xs),) * N).reshape(N, -1).T
    return xs[idx], np.prod(ws[idx], axis=1)


def tensor_grid_coefficient(K: OperatorSpec, mu: Measure, l: int, m: int, N: int) -> complex:
    """``int K_N([H_l]_+) [H_m]_+ dmu_N(sqrt(N) x)`` by summing over the ``k^N`` support grid.

    The measure ``dmu_N(sqrt(N) x)`` puts mass ``prod w_i`` at ``x = atoms / sqrt(N)``.
    """
    s = sum_of_variables(N, 1.0 + 0j)
    fl = compose_with_multi(hermite_polynomial(l).to_float(), s)
    gm = compose_with_multi(hermite_polynomial(m).to_float(), s)
    kf = tensorize(K, fl, N)
    pts, wts = product_grid(mu, N, 1 / math.sqrt(N))
    return complex(np.sum(wts * _grid_values(kf, pts) * _grid_values(gm, pts)))


def random_multipoly(rng: np.random.Generator, N: int, degree: int = 2) -> MultiPolynomial:
    """Coefficients uniform on ``[-1, 1] + i [-1, 1]``, per-variable degree ``<= degree``."""
    terms = {}
    for e in np.ndindex(*((degree + 1,) * N)):
        terms[tuple(int(v) for v in e)] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return MultiPolynomial(N, terms)


def tensor_contraction_check(
    K: OperatorSpec,
    alpha: Measure,
    beta: Measure,
    pq: ExponentPair,
    N: int,
    trials: int = 500,
    seed: int = 0,
    degree: int = 2,
) -> float:
    """Largest ``||K_N f||_{L^q(alpha_N(sqrt N x))} / ||f||_{L^p(beta_N(sqrt N x))}`` over random ``f``."""
    if not (alpha.is_atomic() and beta.is_atomic()):
        raise NotAtomic("tensor contraction checks need atomic measures")
    if N < 1 or N > 4:
        raise ValueError("tensor checks are limited to 1 <= N <= 4")
    rng = np.random.default_rng(seed)
    pa, wa = product_grid(alpha, N, 1 / math.sqrt(N))
    pb, wb = product_grid(beta, N, 1 / math.sqrt(N))
    worst = 0.0
    for _ in range(trials):
        f = random_multipoly(rng, N, degree)
        num = _weighted_lp(wa, _grid_values(tensorize(K, f, N), pa), pq.q)
        den = _weighted_lp(wb, _grid_values(f, pb), pq.p)
        if den > 0:
            worst = max(worst, float(num / den))
    return worst


@dataclass
class TransferenceReport:
    omega: complex
    p: float
    q: float
    hypotheses_ok: bool
    K02: object
    K20: object
    K11: object
    tau: object
    recovered_omega: object
    lam: object
    exact_params: bool
    is_hermite_semigroup: bool
    epperson: bool
    epperson_slack: float
    empirical_ratio: float | None
    empirical_ok: bool | None
    consistent: bool | None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        for k, v in out.items():
            if type(v) is ComplexScalar:
                out[k] = v.to_json()
            elif isinstance(v, complex):
                out[k] = {"re": v.real, "im": v.imag}
        return out


def transference_demo(mu: Measure, omega, pq: ExponentPair, grid: int = 100, cutoff: int = 4) -> TransferenceReport:
    """Semigroup operator -> K-matrix -> hypotheses -> parameters -> Epperson -> empirical scan."""
    omega = as_scalar(omega)
    K = semigroup_operator(mu, omega, cutoff)
    km = k_matrix(K, mu, cutoff)
    report = check_hypotheses(km)
    gp = params_from_kmatrix(km)
    tau, w, lam = complex(gp.tau), complex(gp.omega), complex(gp.lam)
    is_t = abs(tau) <= 1e-12 and abs(lam - 1) <= 1e-12 and abs(w - complex(omega)) <= 1e-12
    if gp.exact:
        tau, w, lam = gp.tau, gp.omega, gp.lam
    ok, slack = epperson_ok(pq, omega)
    notes = []
    ratio = emp_ok = consistent = None
    if mu.is_atomic():
        scan = ratio_scan(mu, omega, pq, grid)
        ratio = scan.max_ratio
        emp_ok = ratio <= 1 + 1e-9
        # a contraction on the atomic space transfers to T_omega, so it must pass Epperson
        consistent = (not emp_ok) or ok
        if not consistent:
            notes.append("empirical contraction found but Epperson's condition fails")
    else:
        notes.append("no empirical scan for non-atomic measures")
    return TransferenceReport(
        omega=omega,
        p=pq.p,
        q=pq.q,
        hypotheses_ok=report.ok,
        K02=km[0, 2],
        K20=km[2, 0],
        K11=km[1, 1],
        tau=tau,
        recovered_omega=w,
        lam=lam,
        exact_params=gp.exact,
        is_hermite_semigroup=is_t,
        epperson=ok,
        epperson_slack=slack,
        empirical_ratio=ratio,
        empirical_ok=emp_ok,
        consistent=consistent,
        notes=notes,
    )


def epperson_grid(pq: ExponentPair, re_range, im_range, steps: int):
    """Rows ``(re, im, slack, ok)`` over a rectangular grid of complex ``omega``."""
    rows = []
    for re in np.linspace(re_range[0], re_range[1], steps):
        for im in np.linspace(im_range[0], im_range[1], steps):
            ok, slack = epperson_ok(pq, complex(re, im))
            rows.append((float(re), float(im), slack, ok))
    return rows
