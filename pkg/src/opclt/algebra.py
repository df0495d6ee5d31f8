"""Exact complex-rational scalars and dense polynomials.

Everything exact in the package is built on :class:`ComplexScalar`, a pair of
:class:`fractions.Fraction` values.  Python ``complex`` is the float mirror.
The two never mix silently: an arithmetic operation between a
``ComplexScalar`` and a ``float``/``complex`` raises ``TypeError``; use
:func:`to_complex` or :meth:`Polynomial.to_float` to cross over.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Union

Rational = Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int/Fraction into a canonical Fraction."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot read {text!r} as an exact rational")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class ComplexScalar:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else parse_rational(re)
        self.im = im if type(im) is Fraction else parse_rational(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ComplexScalar":
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @staticmethod
    def _coerce(other):
        if type(other) is ComplexScalar:
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ComplexScalar._raw(Fraction(other), Fraction(0))
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar._raw(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return ComplexScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return ComplexScalar._raw(a * c, b)
        return ComplexScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "ComplexScalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by exact zero")
        return ComplexScalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparisons and conversions
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> "ComplexScalar":
        if isinstance(obj, dict):
            return cls(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))
        return cls(parse_rational(obj))

    def __repr__(self):
        return f"ComplexScalar({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)} {sign} {format_rational(abs(self.im))}i"


ZERO = ComplexScalar._raw(Fraction(0), Fraction(0))
ONE = ComplexScalar._raw(Fraction(1), Fraction(0))
I = ComplexScalar._raw(Fraction(0), Fraction(1))

Scalar = Union[ComplexScalar, complex]


def is_exact(x) -> bool:
    return isinstance(x, (ComplexScalar, int, Fraction)) and not isinstance(x, bool)


def as_scalar(x) -> Scalar:
    """Normalize a user value: exact inputs become ComplexScalar, floats become complex."""
    if type(x) is ComplexScalar:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return ComplexScalar._raw(Fraction(x), Fraction(0))
    if isinstance(x, str):
        return ComplexScalar(parse_rational(x))
    if isinstance(x, _RationalABC):
        return ComplexScalar(Fraction(x.numerator, x.denominator))
    if isinstance(x, (float, complex)):
        return complex(x)
    try:
        return complex(x)
    except TypeError:
        raise TypeError(f"not a scalar: {x!r}") from None


def to_complex(x) -> complex:
    """Explicit exact -> float conversion (identity on complex)."""
    return complex(x)


def exact_sqrt_rational(q) -> Fraction | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def canonical_sign(z):
    """Choose the representative of ``{z, -z}`` with Re > 0, or Re = 0 and Im >= 0."""
    if is_exact(z):
        z = as_scalar(z)
        if z.re < 0 or (z.re == 0 and z.im < 0):
            return -z
        return z
    z = complex(z)
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        return -z
    return z


def exact_sqrt(z) -> ComplexScalar | None:
    """Principal square root of an exact complex rational when it is itself exact.

    Solves ``(x + iy)^2 = a + ib`` over the rationals; returns None when no
    rational solution exists.
    """
    z = as_scalar(z)
    a, b = z.re, z.im
    if not b:
        if a >= 0:
            r = exact_sqrt_rational(a)
            return None if r is None else ComplexScalar._raw(r, Fraction(0))
        r = exact_sqrt_rational(-a)
        return None if r is None else ComplexScalar._raw(Fraction(0), r)
    modulus = exact_sqrt_rational(a * a + b * b)
    if modulus is None:
        return None
    x = exact_sqrt_rational((modulus + a) / 2)
    if x is None or not x:
        return None
    y = b / (2 * x)
    return canonical_sign(ComplexScalar._raw(x, y))


def principal_sqrt(z):
    """Principal square root; exact when possible, complex float otherwise."""
    if is_exact(z):
        r = exact_sqrt(z)
        if r is not None:
            return r
        z = complex(z)
    import cmath

    return cmath.sqrt(complex(z))


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)


def double_factorial(n: int) -> int:
    """``n!!`` with the convention ``(-1)!! = 0!! = 1``."""
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def falling_factorial(N: int, s: int) -> int:
    """``N (N-1) ... (N-s+1)``; zero when ``s > N``."""
    if N < 0 or s < 0:
        raise ValueError("falling_factorial needs nonnegative arguments")
    if s > N:
        return 0
    return math.perm(N, s)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts <= 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class Polynomial:
    """Dense one-variable polynomial; ``coeffs[k]`` multiplies ``x**k``.

    Coefficients are all exact (:class:`ComplexScalar`) or all float
    (``complex``).  Trailing zeros are trimmed, so the zero polynomial has
    empty ``coeffs`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        kinds = {type(c) is ComplexScalar for c in cs}
        if len(kinds) > 1:
            raise TypeError("mixed exact and float coefficients; convert explicitly")
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _from_trusted(cls, cs: list) -> "Polynomial":
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        c = as_scalar(c)
        zero = ZERO if type(c) is ComplexScalar else 0j
        return cls([zero] * k + [c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls.monomial(1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(type(c) is ComplexScalar for c in self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO if self.is_exact else 0j

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def to_float(self) -> "Polynomial":
        return Polynomial._from_trusted([complex(c) for c in self.coeffs])

    # ring operations
    def _lift(self, c) -> "Polynomial":
        # ints and Fractions are welcome in either arithmetic
        if isinstance(c, (int, Fraction)) and self.coeffs and not self.is_exact:
            c = complex(c)
        return Polynomial.constant(c)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial._checked(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_trusted([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Polynomial()
            out = [None] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j, cb in enumerate(b):
                    term = ca * cb
                    k = i + j
                    out[k] = term if out[k] is None else out[k] + term
            zero = ZERO if type(a[0]) is ComplexScalar else 0j
            return Polynomial._checked([zero if c is None else c for c in out])
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = other
        else:
            try:
                c = as_scalar(other)
            except TypeError:
                return NotImplemented
        return Polynomial._checked([x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = other if isinstance(other, (int, Fraction)) else as_scalar(other)
        return Polynomial._checked([x / c for x in self.coeffs])

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self._lift(1)
        for _ in range(k):
            result = result * self
        return result

    @classmethod
    def _checked(cls, cs: list) -> "Polynomial":
        if cs and len({type(c) is ComplexScalar for c in cs}) > 1:
            raise TypeError("mixed exact and float coefficients; convert explicitly")
        return cls._from_trusted(cs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation."""
        if not self.coeffs:
            return ZERO if is_exact(x) else 0j
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def scale_arg(self, lam) -> "Polynomial":
        """``q(x) = p(lam * x)``."""
        lam = as_scalar(lam)
        out = []
        power = ONE if type(lam) is ComplexScalar else 1 + 0j
        for c in self.coeffs:
            out.append(c * power)
            power = power * lam
        return Polynomial._checked(out)

    def compose(self, q: "Polynomial") -> "Polynomial":
        """``p(q(x))``."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * q + Polynomial.constant(c)
        return acc

    def to_json(self) -> list:
        return [c.to_json() if type(c) is ComplexScalar else [c.real, c.imag] for c in self.coeffs]

    @classmethod
    def from_json(cls, items) -> "Polynomial":
        return cls([ComplexScalar.from_json(c) for c in items])

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if type(c) is ComplexScalar and c.is_real():
                neg = c.re < 0
                mag = format_rational(abs(c.re))
                body = "" if (mag == "1" and k) else mag
            else:
                neg = False
                body = f"({c})"
            var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            term = body + ("*" if body and var else "") + var
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)


def poly_eval(p: Polynomial, x):
    return p(x)


def poly_scale_arg(p: Polynomial, lam) -> Polynomial:
    return p.scale_arg(lam)


class MultiPolynomial:
    """Sparse polynomial in ``nvars`` variables: ``{exponent tuple: coefficient}``.

    Only used internally for tensor-power computations, so coefficients follow
    whatever arithmetic the caller feeds in.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int, c=1) -> "MultiPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    def __add__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "MultiPolynomial":
        return MultiPolynomial(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPolynomial):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t = c1 * c2
                out[e] = out[e] + t if e in out else t
        return MultiPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def substitute_each(self, lam) -> "MultiPolynomial":
        """``f(lam x_1, ..., lam x_N)``."""
        return MultiPolynomial(
            self.nvars, {e: c * lam ** sum(e) for e, c in self.terms.items()}
        )

    def apply_in_variable(self, i: int, images) -> "MultiPolynomial":
        """Apply a one-variable linear map to variable ``i``.

        ``images[j]`` is the image of ``x_i**j`` given as a coefficient list
        (lowest degree first).
        """
        out: dict = {}
        for e, c in self.terms.items():
            j = e[i]
            if j >= len(images):
                raise ValueError(f"operator image of x^{j} not available")
            for k, a in enumerate(images[j]):
                if not a:
                    continue
                new = e[:i] + (k,) + e[i + 1:]
                t = c * a
                out[new] = out[new] + t if new in out else t
        return MultiPolynomial(self.nvars, out)

    def __call__(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for xi, k in zip(point, e):
                if k:
                    t = t * xi ** k
            total = total + t
        return total

    def max_degree_per_variable(self) -> int:
        return max((max(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms


def sum_of_variables(nvars: int, c=1) -> MultiPolynomial:
    """``c * (x_1 + ... + x_N)``."""
    return MultiPolynomial(nvars, {tuple(int(k == i) for k in range(nvars)): c for i in range(nvars)})


def univariate_in(p: Polynomial, nvars: int, i: int) -> MultiPolynomial:
    """Embed one-variable ``p`` as a polynomial in variable ``i``."""
    terms = {}
    for k, c in enumerate(p.coeffs):
        e = [0] * nvars
        e[i] = k
        terms[tuple(e)] = c
    return MultiPolynomial(nvars, terms)


def compose_with_multi(p: Polynomial, inner: MultiPolynomial) -> MultiPolynomial:
    """``p(inner(x_1, ..., x_N))`` by Horner's rule."""
    acc = MultiPolynomial(inner.nvars)
    for c in reversed(p.coeffs):
        acc = acc * inner + MultiPolynomial.constant(inner.nvars, c)
    return acc


def grid_points(support, nvars: int):
    """Cartesian product of a one-variable support with itself."""
    return product(support, repeat=nvars)
