"""Arbitrary-precision complex polynomials and self-inversive structure.

Coefficients are stored ascending by power as ``mpmath.mpc`` values rounded
to the polynomial's ``precision_bits``.  Every operation runs inside
``mp.workprec`` so results do not depend on the ambient mpmath precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import mp, mpc, mpf
from mpmath.libmp import to_str

DEFAULT_PRECISION = 256
MIN_PRECISION = 64


class ZeroPolynomialError(ValueError):
    """Raised when an analysis operation receives the zero polynomial."""


class NotSelfInversiveError(ValueError):
    """Raised by :func:`detect_self_inversive` with the first failing index."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


def default_tol(precision_bits: int) -> mpf:
    """Structural tolerance 2^(-precision/2)."""
    return mpf(2) ** (-(precision_bits // 2))


def to_coefficient(x, precision_bits: int = DEFAULT_PRECISION) -> mpc:
    """Convert ints, floats, strings, Fractions, pairs or mp numbers to mpc."""
    with mp.workprec(precision_bits):
        if isinstance(x, Fraction):
            value = mpc(mpf(x.numerator) / x.denominator)
        elif isinstance(x, (tuple, list)):
            re, im = x
            value = mpc(_to_real(re), _to_real(im))
        elif isinstance(x, str):
            value = mpc(mp.mpmathify(x.replace(" ", "")))
        else:
            value = mpc(x)
        # force rounding to the working precision
        value = mpc(+value.real, +value.imag)
    if not (mp.isfinite(value.real) and mp.isfinite(value.imag)):
        raise ValueError(f"non-finite coefficient {x!r}")
    return value


def _to_real(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial, ``coeffs[j]`` multiplies ``z**j``.

    Trailing (highest-power) zeros are trimmed on construction; the zero
    polynomial is stored with an empty coefficient tuple.
    """

    coeffs: tuple = field(default=())
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION}")
        cs = [to_coefficient(c, self.precision_bits) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1, precision_bits: int = DEFAULT_PRECISION):
        p = cls((leading,), precision_bits)
        for r in roots:
            p = multiply(p, cls((-to_coefficient(r, precision_bits), 1), precision_bits))
        return p

    @classmethod
    def monomial(cls, power: int, coeff=1, precision_bits: int = DEFAULT_PRECISION):
        return cls((0,) * power + (coeff,), precision_bits)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> mpc:
        self._require_nonzero()
        return self.coeffs[-1]

    def is_real(self, tol=0) -> bool:
        return all(abs(c.imag) <= tol for c in self.coeffs)

    def _require_nonzero(self):
        if self.is_zero:
            raise ZeroPolynomialError("zero input")

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return add(self, scale(other, -1))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return multiply(self, other)

    def to_json(self) -> dict:
        digits = math.ceil(self.precision_bits * math.log10(2)) + 2
        return {
            "precision_bits": self.precision_bits,
            "coeffs": [[to_str(c.real._mpf_, digits), to_str(c.imag._mpf_, digits)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "Polynomial":
        if isinstance(doc, str):
            doc = json.loads(doc)
        prec = int(doc["precision_bits"])
        return cls(tuple((re, im) for re, im in doc["coeffs"]), prec)

    def to_complex(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def __repr__(self):
        terms = ", ".join(mp.nstr(c, 8) for c in self.coeffs)
        return f"Polynomial([{terms}], precision_bits={self.precision_bits})"


@dataclass(frozen=True)
class SelfInversiveForm:
    """A polynomial together with its verified unit-modulus constant epsilon."""

    poly: Polynomial
    epsilon: mpc
    tol: mpf

    @property
    def degree(self) -> int:
        return self.poly.degree


def evaluate(p: Polynomial, z) -> mpc:
    """Horner evaluation of ``p`` at ``z``."""
    with mp.workprec(p.precision_bits):
        z = mpc(z)
        acc = mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc


def derivative(p: Polynomial) -> Polynomial:
    p._require_nonzero()
    with mp.workprec(p.precision_bits):
        return Polynomial(tuple(j * p.coeffs[j] for j in range(1, len(p.coeffs))), p.precision_bits)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    prec = max(p.precision_bits, q.precision_bits)
    n = max(len(p.coeffs), len(q.coeffs))
    a = p.coeffs + (mpc(0),) * (n - len(p.coeffs))
    b = q.coeffs + (mpc(0),) * (n - len(q.coeffs))
    with mp.workprec(prec):
        return Polynomial(tuple(x + y for x, y in zip(a, b)), prec)


def scale(p: Polynomial, s) -> Polynomial:
    with mp.workprec(p.precision_bits):
        s = mpc(s)
        return Polynomial(tuple(s * c for c in p.coeffs), p.precision_bits)


def shift(p: Polynomial, power: int) -> Polynomial:
    """Multiply by ``z**power`` (power >= 0)."""
    if power < 0:
        raise ValueError("negative shift")
    if p.is_zero:
        return p
    return Polynomial((mpc(0),) * power + p.coeffs, p.precision_bits)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    prec = max(p.precision_bits, q.precision_bits)
    if p.is_zero or q.is_zero:
        return Polynomial((), prec)
    with mp.workprec(prec):
        out = [mpc(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(p.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out), prec)


def star(h: Polynomial, n: int | None = None) -> Polynomial:
    """Reciprocal adjoint ``z**n * conj(h)(1/z)`` relative to declared degree ``n``.

    ``n`` defaults to ``h.degree``; a larger ``n`` pads the reversed vector
    so structural offsets survive a vanishing constant term.
    """
    h._require_nonzero()
    if n is None:
        n = h.degree
    if n < h.degree:
        raise ValueError(f"declared degree {n} below actual degree {h.degree}")
    padded = h.coeffs + (mpc(0),) * (n - h.degree)
    with mp.workprec(h.precision_bits):
        return Polynomial(tuple(c.conjugate() for c in reversed(padded)), h.precision_bits)


def detect_self_inversive(p: Polynomial, tol=None) -> SelfInversiveForm:
    """Find epsilon with ``A_j = eps * conj(A_{d-j})`` for all j, or raise.

    Raises :class:`NotSelfInversiveError` carrying the first failing index.
    The comparison is relative to the largest coefficient modulus.
    """
    p._require_nonzero()
    with mp.workprec(p.precision_bits):
        tol = default_tol(p.precision_bits) if tol is None else mpf(tol)
        cs = p.coeffs
        d = p.degree
        a0, ad = cs[0], cs[-1]
        if a0 == 0:
            raise NotSelfInversiveError("A_0 = 0 while A_d != 0", index=0)
        eps = a0 / ad.conjugate()
        if abs(abs(eps) - 1) > tol:
            raise NotSelfInversiveError(f"|epsilon| = {mp.nstr(abs(eps), 10)} is not 1", index=0)
        size = max(abs(c) for c in cs)
        for j in range(d + 1):
            if abs(cs[j] - eps * cs[d - j].conjugate()) > tol * size:
                raise NotSelfInversiveError(f"coefficient {j} breaks A_j = eps*conj(A_(d-j))", index=j)
        return SelfInversiveForm(p, eps, tol)


def is_self_inversive(p: Polynomial, tol=None) -> bool:
    try:
        detect_self_inversive(p, tol)
    except NotSelfInversiveError:
        return False
    return True


def construct_theorem1(h: Polynomial, d: int, lam, tol=None) -> Polynomial:
    """``z**(d-n) h(z) + lam * h*(z)`` for ``d > n = deg h`` and ``|lam| = 1``."""
    h._require_nonzero()
    n = h.degree
    if d <= n:
        raise ValueError("degree constraint d>n violated")
    with mp.workprec(h.precision_bits):
        lam = mpc(lam)
        tol = default_tol(h.precision_bits) if tol is None else mpf(tol)
        if abs(abs(lam) - 1) > tol:
            raise ValueError("lambda must lie on the unit circle")
    return add(shift(h, d - n), scale(star(h, n), lam))


def derivative_decomposition(P: SelfInversiveForm) -> tuple[Polynomial, mpc]:
    """Return ``(P'/d, eps)``; ``construct_theorem1`` of it rebuilds ``P``."""
    d = P.poly.degree
    if d < 1:
        raise ValueError("degree must be at least 1")
    with mp.workprec(P.poly.precision_bits):
        h = scale(derivative(P.poly), mpf(1) / d)
    return h, P.epsilon


def strip_low_zeros(p: Polynomial) -> tuple[Polynomial, int]:
    """Split ``p = z**v * q`` with ``q(0) != 0``."""
    p._require_nonzero()
    v = 0
    while p.coeffs[v] == 0:
        v += 1
    return Polynomial(p.coeffs[v:], p.precision_bits), v


def max_coeff_distance(p: Polynomial, q: Polynomial, relative: bool = False) -> mpf:
    """Largest coefficientwise difference, optionally relative to ``max|coeff|``."""
    prec = max(p.precision_bits, q.precision_bits)
    n = max(len(p.coeffs), len(q.coeffs))
    a = p.coeffs + (mpc(0),) * (n - len(p.coeffs))
    b = q.coeffs + (mpc(0),) * (n - len(q.coeffs))
    with mp.workprec(prec):
        diff = max((abs(x - y) for x, y in zip(a, b)), default=mpf(0))
        if relative:
            size = max((abs(x) for x in a + b), default=mpf(0))
            return diff / size if size else diff
        return diff


def coefficient_l1(p: Polynomial) -> mpf:
    with mp.workprec(p.precision_bits):
        return mp.fsum(abs(c) for c in p.coeffs)


def as_polynomial(coeffs: Sequence, precision_bits: int = DEFAULT_PRECISION) -> Polynomial:
    return Polynomial(tuple(coeffs), precision_bits)
