"""The Ramanujan-type polynomial families and their main/error splittings.

Five families are built from products of zeta-type values:

* ``P``: zeta(2j) zeta(2k-2j) plus the zeta(2k-1) tail; monic companion ``M``.
* ``Q``: eta0 products plus an eta0(2k-1) tail; monic companion ``N``.
* ``W``: eta products; monic companion ``V``.
* ``Y``: eta0 products in powers ``z^j``.
* ``S``: products of L(2j+1, chi_4).

For ``P``, ``Q`` and ``W`` the monic companion splits as a Theorem-1 main
part built from ``h_r`` (independent of k) plus a small error part built
from ``e_r``; :func:`decompose` returns both and checks the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from mpmath import mp, mpc, mpf

from .poly import (
    DEFAULT_PRECISION,
    Polynomial,
    add,
    max_coeff_distance,
    multiply,
    scale,
    shift,
    star,
    to_coefficient,
)
from .special import (
    bernoulli,
    eta0,
    eta0_at_even,
    eta_at_even,
    l_chi4,
    zeta,
    zeta_int,
)

GUARD_BITS = 32
MAX_K = 10_000


class FamilyId(str, Enum):
    P = "P"
    Q = "Q"
    W = "W"
    Y = "Y"
    S = "S"


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class FamilySequences:
    family: FamilyId
    k: int
    q: tuple
    delta: tuple


@dataclass(frozen=True)
class FamilyDecomposition:
    """``monic_base = z**base_shift * (main + error)`` in Lemma-2 shape.

    ``main = z**(2K-n) h_r + lam h_r*`` and ``error = z**K e + lam z**(K-m) e*``
    with ``K = lemma2_k``, ``e = lemma2_e`` of formal degree ``m = lemma2_m``.
    ``e_r`` is the error polynomial exactly as displayed for the family; for
    ``P`` the Lemma-2 error polynomial is ``z * e_r``.
    """

    family: FamilyId
    k: int
    r: int
    h_r: Polynomial
    e_r: Polynomial
    lam: mpc
    monic_base: Polynomial
    lemma2_e: Polynomial
    lemma2_m: int
    lemma2_k: int
    base_shift: int
    reconstruction_error: mpf


def _fam(family) -> FamilyId:
    return family if isinstance(family, FamilyId) else FamilyId(str(family).upper())


def _check_k(k: int, lo: int):
    if k < lo:
        raise ValueError(f"k must be >= {lo}")
    if k > MAX_K:
        raise ValueError(f"k capped at {MAX_K}")


def _z(n: int, prec: int) -> mpf:
    return zeta_int(n, prec).value


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# -- P and M -----------------------------------------------------------------


def build_P(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """P_k from the zeta-product form.

    For k = 1 the zeta(2k-1) tail multiplies ``z - z`` and is dropped.
    """
    _check_k(k, 1)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        zs = [_z(2 * j, wp) for j in range(k + 1)]
        c = [mpf(0)] * (2 * k + 1)
        f = _sign(k) * 2 / mp.pi
        for j in range(k + 1):
            c[2 * j] = f * _sign(j) * zs[j] * zs[k - j]
        if k >= 2:
            t = zeta(2 * k - 1, wp).value
            c[2 * k - 1] += t
            c[1] += _sign(k) * t
    return Polynomial(tuple(c), precision)


def build_P_bernoulli(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """P_k from exact Bernoulli products; a cross-check path for :func:`build_P`."""
    _check_k(k, 1)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        pref = (2 * mp.pi) ** (2 * k - 1) / math.factorial(2 * k)
        c = [mpf(0)] * (2 * k + 1)
        for j in range(k + 1):
            exact = _sign(j) * bernoulli(2 * j) * bernoulli(2 * k - 2 * j) * math.comb(2 * k, 2 * j)
            c[2 * j] = pref * mpf(exact.numerator) / exact.denominator
        if k >= 2:
            t = zeta(2 * k - 1, wp).value
            c[2 * k - 1] += t
            c[1] += _sign(k) * t
    return Polynomial(tuple(c), precision)


def build_M(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """Monic M_k = -(pi / zeta(2k)) (z^2 + 1) P_k."""
    _check_k(k, 1)
    wp = precision + GUARD_BITS
    p = build_P(k, wp)
    with mp.workprec(wp):
        m = scale(multiply(p, Polynomial((1, 0, 1), wp)), -mp.pi / _z(2 * k, wp))
    return Polynomial(m.coeffs, precision)


# -- Q, N, W, V, Y, S --------------------------------------------------------


def build_Q(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        c = _q_defining_sum(k, wp)
        f = _sign(k) * mpf(2) ** (2 * k + 1) / mp.pi
        c = [f * x for x in c]
    return Polynomial(tuple(c), precision)


def _q_defining_sum(k: int, wp: int) -> list:
    e0 = [eta0_at_even(2 * j, wp).value for j in range(k + 1)]
    c = [mpf(0)] * (2 * k)
    for j in range(1, k):
        c[2 * j] = _sign(j) * e0[j] * e0[k - j]
    t = _sign(k) * mp.pi / 4 * _eta0_odd(2 * k - 1, wp)
    c[2 * k - 1] += t
    c[1] += _sign(k) * t
    return c


def _eta0_odd(n: int, wp: int) -> mpf:
    return eta0(n, wp).value


def build_N(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """Monic N_k = Q_k (z^2 + 1) / (2^(2k-1) eta0(2k-1))."""
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    q = build_Q(k, wp)
    with mp.workprec(wp):
        f = 1 / (mpf(2) ** (2 * k - 1) * _eta0_odd(2 * k - 1, wp))
        n = scale(multiply(q, Polynomial((1, 0, 1), wp)), f)
    return Polynomial(n.coeffs, precision)


def _w_defining_sum(k: int, wp: int) -> list:
    e = [eta_at_even(2 * j, wp).value for j in range(k + 1)]
    c = [mpf(0)] * (2 * k + 1)
    for j in range(k + 1):
        c[2 * j] = _sign(j) * e[j] * e[k - j]
    return c


def build_W(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        f = _sign(k) * mpf(2) ** (2 * k + 1) / mp.pi
        c = [f * x for x in _w_defining_sum(k, wp)]
    return Polynomial(tuple(c), precision)


def build_V(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """Monic V_k = pi W_k (z^2 + 1) / (2^(2k) eta(2k))."""
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    w = build_W(k, wp)
    with mp.workprec(wp):
        f = mp.pi / (mpf(2) ** (2 * k) * eta_at_even(2 * k, wp).value)
        v = scale(multiply(w, Polynomial((1, 0, 1), wp)), f)
    return Polynomial(v.coeffs, precision)


def _y_defining_sum(k: int, wp: int) -> list:
    e0 = [eta0_at_even(2 * j, wp).value for j in range(k + 1)]
    c = [mpf(0)] * k
    for j in range(1, k):
        c[j] = e0[j] * e0[k - j]
    return c


def build_Y(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """Y_k = 4 (-1)^k sum_{j=1}^{k-1} eta0(2j) eta0(2k-2j) z^j.

    The constant term vanishes, so ``Y_k / z`` (degree k-2) is the
    self-inversive part.
    """
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        c = [4 * _sign(k) * x for x in _y_defining_sum(k, wp)]
    return Polynomial(tuple(c), precision)


def _s_defining_sum(k: int, wp: int) -> list:
    ls = [l_chi4(2 * j + 1, wp).value for j in range(k + 1)]
    return [ls[j] * ls[k - j] for j in range(k + 1)]


def _s_prefactor(k: int) -> mpf:
    return _sign(k) / (math.factorial(2 * k) * 4) * (mp.pi / 2) ** (2 * k + 2)


def build_S(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        f = 1 / _s_prefactor(k)
        c = [f * x for x in _s_defining_sum(k, wp)]
    return Polynomial(tuple(c), precision)


def defining_sum(family, k: int, precision: int = DEFAULT_PRECISION) -> tuple[mpf, Polynomial]:
    """``(prefactor, right-hand side)`` of a family's defining display."""
    fam = _fam(family)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        if fam is FamilyId.Q:
            return _sign(k) * mp.pi / mpf(2) ** (2 * k + 1), Polynomial(tuple(_q_defining_sum(k, wp)), precision)
        if fam is FamilyId.W:
            return _sign(k) * mp.pi / mpf(2) ** (2 * k + 1), Polynomial(tuple(_w_defining_sum(k, wp)), precision)
        if fam is FamilyId.Y:
            return mpf(_sign(k)) / 4, Polynomial(tuple(_y_defining_sum(k, wp)), precision)
        if fam is FamilyId.S:
            return _s_prefactor(k), Polynomial(tuple(_s_defining_sum(k, wp)), precision)
    raise ValueError(f"no defining display for family {fam.value}")


BUILDERS = {
    FamilyId.P: build_P,
    FamilyId.Q: build_Q,
    FamilyId.W: build_W,
    FamilyId.Y: build_Y,
    FamilyId.S: build_S,
}


def build(family, k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    return BUILDERS[_fam(family)](k, precision)


def counterexample_poly(k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """z^k (z^3 - z - 1) + (z^3 + z^2 - 1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return add(shift(Polynomial((-1, -1, 0, 1), precision), k), Polynomial((-1, 0, 1, 1), precision))


# -- q / delta sequences and the h_r / e_r split ------------------------------


def sequences(family, k: int, precision: int = DEFAULT_PRECISION) -> FamilySequences:
    fam = _fam(family)
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        if fam is FamilyId.P:
            f = [_z(2 * j, wp) for j in range(k + 1)]
            q = [f[j] * f[k - j] / f[k] for j in range(k + 1)]
            delta = [q[j] - f[j] for j in range(k + 1)]
        elif fam is FamilyId.Q:
            f = [eta0_at_even(2 * j, wp).value for j in range(k + 1)]
            den = _eta0_odd(2 * k - 1, wp)
            q = [f[j] * f[k - j] / den for j in range(k + 1)]
            delta = [q[j] - f[j] for j in range(k + 1)]
        elif fam is FamilyId.W:
            f = [eta_at_even(2 * j, wp).value for j in range(k + 1)]
            q = [f[j] * f[k - j] / f[k] for j in range(k + 1)]
            delta = [f[j] - q[j] for j in range(k + 1)]
        else:
            raise ValueError("sequences defined for P, Q and W only")
    with mp.workprec(precision):
        return FamilySequences(fam, k, tuple(+x for x in q), tuple(+x for x in delta))


def h_r_of(family, r: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """The k-independent main polynomial h_r (degree 2r)."""
    fam = _fam(family)
    if r < 1:
        raise ValueError("r must be >= 1")
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        c = [mpf(0)] * (2 * r + 1)
        c[2 * r] = mpf(1)
        if fam is FamilyId.P:
            if r < 2:
                raise ValueError("P-family h_r needs r >= 2")
            c[2 * r - 1] -= mp.pi
            c[2 * r - 3] -= mp.pi
            for j in range(1, r + 1):
                c[2 * r - 2 * j] += 2 * _sign(j) * (_z(2 * j - 2, wp) - _z(2 * j, wp))
        elif fam is FamilyId.Q:
            c[2 * r - 2] += 1
            for j in range(1, r + 1):
                diff = eta0_at_even(2 * j - 2, wp).value - eta0_at_even(2 * j, wp).value
                c[2 * r - 2 * j + 1] += 4 / mp.pi * _sign(j - 1) * diff
        elif fam is FamilyId.W:
            for j in range(1, r + 1):
                diff = eta_at_even(2 * j - 2, wp).value - eta_at_even(2 * j, wp).value
                c[2 * r - 2 * j] += 2 * _sign(j - 1) * diff
        else:
            raise ValueError("h_r defined for P, Q and W only")
    return Polynomial(tuple(c), precision)


def min_k_for(family, r: int) -> int:
    """Smallest k for which the Lemma-2 splitting with this r is well formed."""
    fam = _fam(family)
    # P: K = k+1 > 2r and exponents k-2j >= 0; Q: K = k > 2r; W: K = k+1 > 2r
    return {FamilyId.P: 2 * r, FamilyId.Q: 2 * r + 1, FamilyId.W: 2 * r}[fam]


def e_r_of(family, k: int, r: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    """The error polynomial e_r for given k (formal degree k - 1)."""
    fam = _fam(family)
    if k < min_k_for(fam, r):
        raise ValueError(f"family {fam.value} with r={r} needs k >= {min_k_for(fam, r)}")
    wp = precision + GUARD_BITS
    seq = sequences(fam, k, wp)
    q, dl = seq.q, seq.delta
    half = k // 2
    with mp.workprec(wp):
        c = [mpf(0)] * k
        if fam is FamilyId.P:
            t = -mp.pi * (zeta(2 * k - 1, wp).value / _z(2 * k, wp) - 1)
            c[k - 1] += t
            c[k - 3] += t
            for j in range(1, r + 1):
                c[k - 2 * j] += 2 * _sign(j) * (dl[j - 1] - dl[j])
            for j in range(r + 1, half + 1):
                c[k - 2 * j] += 2 * _sign(j) * (q[j - 1] - q[j])
        elif fam is FamilyId.Q:
            f = 4 / mp.pi
            for j in range(r + 1, half + 1):
                c[k + 1 - 2 * j] += f * _sign(j - 1) * (q[j - 1] - q[j])
            for j in range(1, r + 1):
                c[k + 1 - 2 * j] += f * _sign(j - 1) * (dl[j - 1] - dl[j])
        else:
            for j in range(r + 1, half + 1):
                c[k + 1 - 2 * j] += 2 * _sign(j - 1) * (q[j - 1] - q[j])
            for j in range(1, r + 1):
                c[k + 1 - 2 * j] -= 2 * _sign(j - 1) * (dl[j - 1] - dl[j])
    return Polynomial(tuple(c), precision)


MONIC_BUILDERS = {FamilyId.P: build_M, FamilyId.Q: build_N, FamilyId.W: build_V}


def build_monic(family, k: int, precision: int = DEFAULT_PRECISION) -> Polynomial:
    return MONIC_BUILDERS[_fam(family)](k, precision)


def lemma2_polynomial(h: Polynomial, e: Polynomial, lam, K: int, m: int | None = None) -> Polynomial:
    """``z^(2K-n) h + z^K e + lam (h* + z^(K-m) e*)``; ``e`` may be zero."""
    n = h.degree
    m = e.degree if m is None else m
    if K <= max(n, m):
        raise ValueError(f"need k > max(m, n) = {max(n, m)}")
    prec = max(h.precision_bits, e.precision_bits)
    with mp.workprec(prec):
        lam = mpc(lam)
        out = add(shift(h, 2 * K - n), scale(star(h, n), lam))
        if not e.is_zero:
            out = add(out, shift(e, K))
            out = add(out, scale(shift(star(e, m), K - m), lam))
    return out


def lemma2_params(family, k: int, r: int, precision: int = DEFAULT_PRECISION) -> tuple:
    """``(h, e, lam, K, m, base_shift)`` so that the monic companion equals
    ``z**base_shift * lemma2_polynomial(h, e, lam, K, m)``."""
    fam = _fam(family)
    if fam not in MONIC_BUILDERS:
        raise ValueError("splitting defined for P, Q and W only")
    h = h_r_of(fam, r, precision)
    e = e_r_of(fam, k, r, precision)
    lam = mpc(_sign(k))
    if fam is FamilyId.P:
        return h, e, shift(e, 1), lam, k + 1, k, 0
    if fam is FamilyId.Q:
        return h, e, e, lam, k, k - 1, 1
    return h, e, e, lam, k + 1, k - 1, 0


def decompose(family, k: int, r: int, precision: int = DEFAULT_PRECISION, tol=None) -> FamilyDecomposition:
    """Split the monic companion into main and error parts and verify it."""
    fam = _fam(family)
    h, e, e2, lam, K, m, base_shift = lemma2_params(fam, k, r, precision)
    base = build_monic(fam, k, precision)
    rebuilt = shift(lemma2_polynomial(h, e2, lam, K, m), base_shift)
    err = max_coeff_distance(rebuilt, base, relative=True)
    tol = mpf(2) ** (-(precision - 24)) if tol is None else mpf(tol)
    if err > tol:
        raise DecompositionError(f"{fam.value}_{k} r={r}: reconstruction error {mp.nstr(err, 5)} > {mp.nstr(tol, 5)}")
    return FamilyDecomposition(fam, k, r, h, e, lam, base, e2, m, K, base_shift, err)


# -- Ramanujan's identity ------------------------------------------------------


def _series_terms(x: mpf, precision: int) -> int:
    """N with sum_{n>N} 1/(e^{2 pi n x} - 1) <= 2^-(precision+8) for x > 0."""
    # tail <= 2 e^{-2 pi (N+1) x} / (1 - e^{-2 pi x}) once e^{2 pi x} >= 2
    target = (precision + 10) * math.log(2)
    xf = float(x)
    extra = -math.log(1 - math.exp(-2 * math.pi * xf)) if xf < 2 else 0.0
    return max(1, math.ceil((target + math.log(2) + extra) / (2 * math.pi * xf)))


def ramanujan_residual(k: int, z, terms: int | None = None, precision: int = 128) -> mpf:
    """|P_k(z)/(2 z^k) - [(-z)^(1-k) S(z) - z^(k-1) S(1/z)]| for Re z > 0,
    with ``S(w) = sum_n 1 / (n^(2k-1) (e^(2 pi n w) - 1))`` truncated.
    """
    _check_k(k, 2)
    wp = precision + GUARD_BITS
    z = to_coefficient(z, wp)
    with mp.workprec(wp):
        if z.real == 0:
            raise ValueError("identity hypothesis violated")
        if z.real < 0:
            raise ValueError("Re(z) > 0 required for convergence")
        w = 1 / z
        if terms is None:
            terms = max(_series_terms(z.real, precision), _series_terms(w.real, precision))

        def series(u):
            return mp.fsum(1 / (mpf(n) ** (2 * k - 1) * mp.expm1(2 * mp.pi * n * u)) for n in range(1, terms + 1))

        p = build_P(k, wp)
        lhs = p(z) / (2 * z**k)
        rhs = (-z) ** (-(k - 1)) * series(z) - z ** (k - 1) * series(w)
        return +abs(lhs - rhs)



# -- bound scans ----------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    """One evaluated inequality; ``j`` holds r for the summed parts."""

    part: str
    k: int
    j: int | None
    lhs: mpf
    rhs: mpf
    margin: mpf
    flagged: bool = False

    @property
    def holds(self) -> bool:
        return self.margin > 0

    def as_csv(self) -> list:
        return [self.part, self.k, "" if self.j is None else self.j, mp.nstr(self.lhs, 17), mp.nstr(self.rhs, 17), mp.nstr(self.margin, 17)]


@dataclass(frozen=True)
class ScanReport:
    rows: tuple
    notes: tuple = ()

    @property
    def violations(self) -> tuple:
        return tuple(r for r in self.rows if not r.holds and not r.flagged)

    @property
    def flagged(self) -> tuple:
        return tuple(r for r in self.rows if r.flagged and not r.holds)

    @property
    def ok(self) -> bool:
        return not self.violations


def _upper(part, k, j, lhs, rhs, flag_if_fails=False) -> ScanRow:
    margin = rhs - lhs
    return ScanRow(part, k, j, lhs, rhs, margin, flag_if_fails and margin <= 0)


def _between(part, k, j, x, rhs) -> ScanRow:
    """0 < x < rhs, margin = distance to the nearer end."""
    return ScanRow(part, k, j, x, rhs, min(x, rhs - x))


def _pow(b, e) -> mpf:
    return mpf(b) ** e


def lemma3_scan(k_range, precision: int = DEFAULT_PRECISION) -> ScanReport:
    """Zeta-quotient bounds behind the P-family error estimate."""
    ks = sorted(set(k_range))
    rows, notes = [], []
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        # (i) is a statement about n alone; cover n = 2 .. 2 max(k)
        for n in range(2, 2 * max(ks, default=1) + 1):
            zn = zeta_int(n, wp).value
            rows.append(_between("3(i)", n, None, zn - 1, mpf(n + 1) / (n - 1) * _pow(2, -n)))
        for k in ks:
            if k < 2:
                notes.append(f"k={k} below every domain; skipped")
                continue
            seq = sequences(FamilyId.P, k, wp)
            q, dl = seq.q, seq.delta
            z2k = _z(2 * k, wp)
            for j in range(1, k):
                rows.append(_between("3(ii)", k, j, _z(2 * k - 2 * j, wp) / z2k - 1, 3 * _pow(4, j - k)))
            if k >= 11:
                x = zeta(2 * k - 1, wp).value / z2k - 1
                rows.append(_between("3(iii)", k, None, x, mpf(11) / 5 * _pow(4, -k)))
            if k >= 4:
                for j in range(1, k):
                    rhs = 21 * _pow(4, -k) if j == 1 else 3 * _pow(4, -k) * (_pow(4, j) + mpf(2 * j - 1) / (2 * j - 3))
                    rows.append(_upper("3(iv)", k, j, abs(dl[j - 1] - dl[j]), rhs))
            for j in range(2, k // 2 + 1):
                rows.append(_upper("3(v)-sym", k, j, abs(q[j] - q[k - j]), _pow(2, -(precision - 16))))
                frac = mpf(2 * j - 1) / (2 * j - 3)
                rhs = 3 * _pow(4, -k) * (_pow(4, j) + frac) + frac * _pow(4, 1 - j)
                rows.append(_upper("3(v)", k, j, abs(q[j - 1] - q[j]), rhs))
            if k >= 4:
                acc = mpf(0)
                for r in range(1, k + 1):
                    acc += abs(dl[r - 1] - dl[r])
                    if r >= 4:
                        rows.append(_upper("3(vi)", k, r, acc, 5 * _pow(4, r - k)))
            if k >= 10:
                for r in range(4, k // 2 + 1):
                    s = mp.fsum(abs(q[j - 1] - q[j]) for j in range(r + 1, k // 2 + 1))
                    rows.append(_upper("3(vii)", k, r, s, 5 * _pow(2, -k) + mpf(12) / 7 * _pow(4, -r)))
    return ScanReport(tuple(rows), tuple(notes))


def lemma5_scan(k_range, precision: int = DEFAULT_PRECISION) -> ScanReport:
    """eta0 (Q family) and eta (W family) analogues of the zeta bounds.

    The j = 1 row of (iv) for eta0 is reported with ``flagged=True`` when it
    fails: there q_0 = 0 while q_1 is close to eta0(2), so the stated bound
    cannot hold; the parts that the certificate relies on start at j = 2.
    """
    ks = sorted(set(k_range))
    rows, notes = [], []
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        for n in range(2, 2 * max(ks, default=1) + 1):
            e0 = eta0(n, wp).value
            e1 = _eta_any(n, wp)
            rows.append(_between("5(i)-eta0", n, None, e0 - 1, _pow(2, -n)))
            rows.append(_between("5(i)-eta", n, None, e1 - (1 - _pow(2, 1 - n)), _pow(2, 1 - n)))
        for k in ks:
            if k < 2:
                notes.append(f"k={k} below every domain; skipped")
                continue
            e0_odd = _eta0_odd(2 * k - 1, wp)
            e_2k = eta_at_even(2 * k, wp).value
            for j in range(1, k):
                rows.append(_between("5(ii)-eta0", k, j, eta0_at_even(2 * k - 2 * j, wp).value / e0_odd - 1, _pow(2, 2 * j - 2 * k)))
                rows.append(_between("5(ii)-eta", k, j, 1 - eta_at_even(2 * k - 2 * j, wp).value / e_2k, _pow(2, 1 - 2 * k + 2 * j)))
            for fam, tag, base in ((FamilyId.Q, "eta0", 2), (FamilyId.W, "eta", 4)):
                seq = sequences(fam, k, wp)
                q, dl = seq.q, seq.delta
                for j in range(1, k):
                    rows.append(_between(f"5(iii)-{tag}", k, j, dl[j], _pow(2, 1 - 2 * k + 2 * j)))
                    rows.append(_upper(f"5(iv)-sym-{tag}", k, j, abs(q[j] - q[k - j]), _pow(2, -(precision - 16))))
                    rhs = _pow(2, base - 2 * j) + _pow(2, 2 - 2 * k + 2 * j)
                    rows.append(_upper(f"5(iv)-{tag}", k, j, abs(q[j - 1] - q[j]), rhs, flag_if_fails=(j == 1)))
                acc = mpf(0)
                for r in range(1, k // 2 + 1):
                    acc += abs(dl[r - 1] - dl[r])
                    rows.append(_upper(f"5(v)-{tag}", k, r, acc, mpf(2) / 3 * _pow(4, r + 1 - k)))
                for r in range(1, k // 2 + 1):
                    s = mp.fsum(abs(q[j - 1] - q[j]) for j in range(r + 1, k // 2 + 1))
                    if fam is FamilyId.Q:
                        rhs = mpf(4) / 3 * (_pow(2, -2 * r) + _pow(2, 2 - k))
                    else:
                        rhs = mpf(16) / 3 * (_pow(2, -2 * r) + _pow(2, -k))
                    rows.append(_upper(f"5(vi)-{tag}", k, r, s, rhs))
    return ScanReport(tuple(rows), tuple(notes))


def _eta_any(n: int, wp: int) -> mpf:
    with mp.workprec(wp):
        return (1 - _pow(2, 1 - n)) * zeta_int(n, wp).value


def lemma6_scan(k_range, samples: int = 2**16, precision: int = DEFAULT_PRECISION, bound: float = 0.019) -> ScanReport:
    """Certified max of |e_4| on the unit circle against ``bound`` for k >= 11."""
    from .certify import certified_max_on_circle

    rows, notes = [], []
    for k in sorted(set(k_range)):
        if k < 11:
            notes.append(f"k={k} outside k >= 11; skipped")
            continue
        e = e_r_of(FamilyId.P, k, 4, precision)
        b = certified_max_on_circle(e, samples)
        rows.append(_upper("6", k, 4, mpf(b.certified_bound), mpf(bound)))
    return ScanReport(tuple(rows), tuple(notes))
