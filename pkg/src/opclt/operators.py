"""Linear operators on one-variable polynomials and their Hermite K-matrix.

An operator is given by the images of the monomials ``1, x, ..., x^cutoff``.
Against a measure ``alpha`` it is summarised by the table

    K[l][m] = int K(H_l)(x) H_m(x) dalpha(x),

whose low corner decides everything about the limit operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ONE, ComplexScalar, Polynomial, as_scalar, is_exact
from .hermite import hermite_polynomial
from .measures import Measure, integrate_poly, orthogonal_polynomial

DEFAULT_CUTOFF = 8


class OperatorError(ValueError):
    pass


class CutoffTooSmall(OperatorError):
    pass


class HypothesisViolation(OperatorError):
    """The K-matrix fails the orthogonality or real-part condition."""


class OperatorSpec:
    """Linear map ``C[x] -> C[x]`` defined by ``images[j] = K(x^j)``."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[Polynomial]):
        self.images = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in images)

    @property
    def cutoff(self) -> int:
        return len(self.images) - 1

    def apply(self, f: Polynomial) -> Polynomial:
        if f.degree > self.cutoff:
            raise CutoffTooSmall(f"operator known up to degree {self.cutoff}, input has degree {f.degree}")
        if f.is_exact and not self.is_exact:
            f = f.to_float()
        out = Polynomial()
        for j, c in enumerate(f.coeffs):
            if c:
                out = out + c * self.images[j]
        return out

    __call__ = apply

    @property
    def is_exact(self) -> bool:
        return all(img.is_exact for img in self.images)

    def then(self, other: "OperatorSpec") -> "OperatorSpec":
        """``other o self``: apply ``self`` first."""
        return OperatorSpec([other.apply(img) for img in self.images])

    def __add__(self, other: "OperatorSpec") -> "OperatorSpec":
        n = min(len(self.images), len(other.images))
        return OperatorSpec([self.images[j] + other.images[j] for j in range(n)])

    def __mul__(self, c) -> "OperatorSpec":
        return OperatorSpec([img * c for img in self.images])

    __rmul__ = __mul__

    def to_float(self) -> "OperatorSpec":
        return OperatorSpec([img.to_float() for img in self.images])

    def __eq__(self, other):
        if not isinstance(other, OperatorSpec):
            return NotImplemented
        return self.images == other.images

    def __repr__(self):
        return f"OperatorSpec(cutoff={self.cutoff})"


def identity_operator(cutoff: int = DEFAULT_CUTOFF) -> OperatorSpec:
    return OperatorSpec([Polynomial.monomial(j) for j in range(cutoff + 1)])


def semigroup_operator(mu: Measure, omega, cutoff: int = DEFAULT_CUTOFF) -> OperatorSpec:
    """The semigroup ``K_omega: P_l -> omega^l P_l`` for the orthogonal polynomials of ``mu``.

    Written in projection form ``K(f) = sum_l omega^l <f, P_l>/<P_l, P_l> P_l``
    with ``l`` below the rank of ``mu``.  For measures of infinite rank this
    is the usual diagonal action; for a measure with ``k`` atoms it keeps the
    first ``k`` terms, which on the two-point space is Beckner's operator
    ``f -> int f dnu + omega x int x f dnu``.
    """
    omega = as_scalar(omega)
    top = int(min(cutoff, mu.rank - 1))
    ps = [orthogonal_polynomial(mu, l) for l in range(top + 1)]
    norms = [integrate_poly(mu, p * p) for p in ps]
    exact = is_exact(omega)
    powers = []
    w = ONE if exact else 1 + 0j
    for _ in range(top + 1):
        powers.append(w)
        w = w * omega
    images = []
    for j in range(cutoff + 1):
        xj = Polynomial.monomial(j)
        img = Polynomial()
        for l in range(min(j, top) + 1):
            proj = integrate_poly(mu, xj * ps[l])
            if not proj:
                continue
            c = proj / norms[l]
            term = ps[l] * c
            if not exact:
                term = term.to_float()
            img = img + term * powers[l]
        images.append(img)
    return OperatorSpec(images)


@dataclass(frozen=True)
class KMatrix:
    entries: tuple
    measure: Measure
    cutoff: int

    def __getitem__(self, lm):
        l, m = lm
        return self.entries[l][m]

    @property
    def is_exact(self) -> bool:
        return all(type(v) is ComplexScalar for row in self.entries for v in row)

    def rows(self):
        return [list(r) for r in self.entries]

    def combine(self, other: "KMatrix", a=1, b=1) -> "KMatrix":
        """``a * self + b * other`` entrywise."""
        n = min(self.cutoff, other.cutoff)
        return KMatrix(
            tuple(tuple(a * self.entries[l][m] + b * other.entries[l][m] for m in range(n + 1)) for l in range(n + 1)),
            self.measure,
            n,
        )


def k_matrix(K: OperatorSpec, mu: Measure, cutoff: int | None = None) -> KMatrix:
    """Table of ``int K(H_l) H_m dmu`` for ``l, m <= cutoff``."""
    if cutoff is None:
        cutoff = K.cutoff
    if cutoff > K.cutoff:
        raise CutoffTooSmall(f"operator known up to degree {K.cutoff}, table needs {cutoff}")
    images = [K.apply(hermite_polynomial(l)) for l in range(cutoff + 1)]
    rows = []
    for l in range(cutoff + 1):
        img = images[l]
        hs = [hermite_polynomial(m) for m in range(cutoff + 1)]
        if not K.is_exact:
            img, hs = img.to_float(), [h.to_float() for h in hs]
        rows.append(tuple(complex(v) if not K.is_exact else v for v in (integrate_poly(mu, img * h) for h in hs)))
    return KMatrix(tuple(rows), mu, cutoff)


def kmatrix_from_rows(rows, mu: Measure | None = None) -> KMatrix:
    """KMatrix from a square table of scalars (for hand-built examples)."""
    entries = tuple(tuple(as_scalar(v) for v in row) for row in rows)
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise OperatorError("K-matrix must be square")
    return KMatrix(entries, mu, n - 1)


@dataclass
class HypothesisReport:
    values: dict
    orthogonality: bool
    real_part_condition: bool
    messages: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.orthogonality and self.real_part_condition


def check_hypotheses(km: KMatrix) -> HypothesisReport:
    """Check ``K00 = 1, K01 = K10 = 0`` and ``Re K02 > -1``."""
    if km.cutoff < 2:
        raise CutoffTooSmall("checking the hypotheses needs K_{0,2}, so cutoff >= 2")
    names = {"K00": (0, 0), "K01": (0, 1), "K10": (1, 0), "K02": (0, 2), "K20": (2, 0), "K11": (1, 1)}
    values = {k: km[lm] for k, lm in names.items()}
    msgs = []
    if is_exact(values["K00"]):
        orth = values["K00"] == 1 and values["K01"] == 0 and values["K10"] == 0
    else:
        tol = 1e-12
        orth = (
            abs(complex(values["K00"]) - 1) <= tol
            and abs(complex(values["K01"])) <= tol
            and abs(complex(values["K10"])) <= tol
        )
    if not orth:
        msgs.append("orthogonality condition fails: need K_{0,0}=1 and K_{0,1}=K_{1,0}=0")
    k02 = values["K02"]
    re = k02.re if type(k02) is ComplexScalar else complex(k02).real
    cond2 = re > -1
    if not cond2:
        msgs.append(f"need Re K_{{0,2}} > -1, got {re}")
    return HypothesisReport(values, orth, cond2, msgs)


def require_hypotheses(km: KMatrix) -> HypothesisReport:
    report = check_hypotheses(km)
    if not report.ok:
        raise HypothesisViolation("; ".join(report.messages))
    return report


def operator_from_json(obj: dict, mu: Measure, cutoff: int = DEFAULT_CUTOFF) -> OperatorSpec:
    kind = obj.get("type")
    if kind == "semigroup":
        omega = ComplexScalar.from_json(obj["omega"])
        return semigroup_operator(mu, omega, cutoff)
    if kind == "monomial_images":
        images = [Polynomial.from_json(img) for img in obj["images"]]
        return OperatorSpec(images)
    raise OperatorError(f"unknown operator type {kind!r}")
