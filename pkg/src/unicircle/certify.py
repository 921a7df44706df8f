"""Lipschitz-certified extrema of |p| on the unit circle and Lemma-2 certificates.

The grid values ``p(e^{2 pi i j / N})`` are a single length-N FFT of the
coefficient vector (folded modulo N when deg p >= N).  A uniform grid with
spacing ``2 pi / N`` leaves every angle within ``pi / N`` of a sample, so

    min |p| >= sampled_min - L pi / N - slack,   L = sum j |A_j|,

where ``slack`` bounds the floating-point error of the FFT.  The located
extremum is then refined in mpmath by golden-section search, which only
sharpens the reported angle; the certified bound comes from the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from mpmath import mp, mpc, mpf

from .poly import Polynomial, evaluate
from .roots import NonConvergenceError, all_roots, unimodularity_tol

DEFAULT_CERT_SAMPLES = 2**20
DEFAULT_EXPLORE_SAMPLES = 2**12
MIN_SAMPLES = 64
_EPS = 2.0**-53


@dataclass(frozen=True)
class CircleBound:
    kind: str  # "min" or "max"
    sampled_extremum: float
    theta_at: float
    lipschitz: float
    samples: int
    certified_bound: float
    refined_extremum: float
    rounding_slack: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sampled_extremum": self.sampled_extremum,
            "theta_at": self.theta_at,
            "lipschitz": self.lipschitz,
            "samples": self.samples,
            "certified_bound": self.certified_bound,
            "refined_extremum": self.refined_extremum,
            "rounding_slack": self.rounding_slack,
        }


def lipschitz_constant(p: Polynomial) -> mpf:
    """sum_j j |A_j|, a bound for |d/dtheta p(e^{i theta})|."""
    with mp.workprec(p.precision_bits):
        return mp.fsum(j * abs(c) for j, c in enumerate(p.coeffs))


def _grid_values(p: Polynomial, samples: int) -> tuple[np.ndarray, float]:
    a = np.zeros(samples, dtype=complex)
    cs = np.array(p.to_complex(), dtype=complex)
    for start in range(0, len(cs), samples):
        chunk = cs[start : start + samples]
        a[: len(chunk)] += chunk
    vals = np.fft.ifft(a) * samples
    # FFT error <= c log2(N) eps ||y||_2 with ||y||_2 = sqrt(N) ||a||_2, plus coefficient rounding
    l1 = float(np.abs(cs).sum())
    l2 = float(np.sqrt((np.abs(cs) ** 2).sum()))
    slack = 5 * math.log2(samples) * _EPS * math.sqrt(samples) * l2 + 4 * (len(cs) + 1) * _EPS * l1
    return vals, slack


def _abs_on_circle(p: Polynomial, theta) -> mpf:
    return abs(evaluate(p, mp.expj(theta)))


def _refine(p: Polynomial, theta0: float, step: float, kind: str, iters: int = 80) -> tuple[mpf, mpf]:
    sign = 1 if kind == "min" else -1
    with mp.workprec(p.precision_bits):
        g = (mp.sqrt(5) - 1) / 2
        f = lambda t: sign * _abs_on_circle(p, t)
        a, b = mpf(theta0) - step, mpf(theta0) + step
        best = (mpf(theta0), f(mpf(theta0)))
        for _ in range(iters):
            x1, x2 = b - g * (b - a), a + g * (b - a)
            f1, f2 = f(x1), f(x2)
            if f1 <= f2:
                b, cand = x2, (x1, f1)
            else:
                a, cand = x1, (x2, f2)
            if cand[1] < best[1]:
                best = cand
        return best[0], sign * best[1]


def _circle_bound(p: Polynomial, samples: int, kind: str) -> CircleBound:
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_SAMPLES}")
    if p.is_zero:
        return CircleBound(kind, 0.0, 0.0, 0.0, samples, 0.0, 0.0, 0.0)
    vals, slack = _grid_values(p, samples)
    mags = np.abs(vals)
    i = int(np.argmin(mags) if kind == "min" else np.argmax(mags))
    sampled = float(mags[i])
    lip = float(lipschitz_constant(p)) * (1 + 1e-12)
    step = 2 * math.pi / samples
    theta = i * step
    if theta > math.pi:
        theta -= 2 * math.pi
    t, v = _refine(p, theta, step, kind)
    t = float(t)
    if p.is_real() and t < 0:
        t = -t  # conjugate-symmetric: report the upper half-plane point
    reach = lip * math.pi / samples
    if kind == "min":
        bound = max(sampled - reach - slack, 0.0)
    else:
        bound = sampled + reach + slack
    return CircleBound(kind, sampled, t, lip, samples, bound, float(v), slack)


@lru_cache(maxsize=256)
def certified_min_on_circle(p: Polynomial, samples: int = DEFAULT_EXPLORE_SAMPLES) -> CircleBound:
    return _circle_bound(p, samples, "min")


@lru_cache(maxsize=256)
def certified_max_on_circle(p: Polynomial, samples: int = DEFAULT_EXPLORE_SAMPLES) -> CircleBound:
    return _circle_bound(p, samples, "max")


@dataclass(frozen=True)
class Lemma2Certificate:
    h: Polynomial
    e: Polynomial
    lam: mpc
    k: int
    c: float
    h_min_bound: CircleBound
    e_max_bound: CircleBound
    h_roots_inside: bool
    valid: bool
    n: int
    m: int
    diagnostics: tuple = field(default=())
    h_max_root_modulus: mpf | None = None
    verified_unimodular: bool | None = None
    verified_deviation: mpf | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "c": self.c,
            "lambda": [mp.nstr(self.lam.real, 17), mp.nstr(self.lam.imag, 17)],
            "h_min_bound": self.h_min_bound.to_json(),
            "e_max_bound": self.e_max_bound.to_json(),
            "h_roots_inside": self.h_roots_inside,
            "h_max_root_modulus": None if self.h_max_root_modulus is None else mp.nstr(self.h_max_root_modulus, 20),
            "verified_unimodular": self.verified_unimodular,
            "verified_deviation": None if self.verified_deviation is None else mp.nstr(self.verified_deviation, 6),
            "diagnostics": list(self.diagnostics),
            "h": self.h.to_json(),
            "e": self.e.to_json(),
        }


def _h_roots_inside(h: Polynomial, h_min: CircleBound) -> tuple[bool, mpf | None, list]:
    """Strict interiority: roots in the closed disk plus a positive certified
    circle minimum (no root on the circle) put every root in |z| < 1."""
    if h.degree < 1:
        return True, mpf(0), []
    try:
        rep = all_roots(h)
    except NonConvergenceError:  # pragma: no cover - all_roots reports, never raises
        return False, None, ["root finder failed on h"]
    if not rep.converged:
        return False, rep.max_modulus, ["root finder did not converge on h"]
    rmax = rep.max_modulus
    tol = unimodularity_tol(h.precision_bits)
    if rmax > 1 + tol:
        return False, rmax, ["h has a root outside the unit disk"]
    if h_min.certified_bound <= 0:
        if rmax >= 1 - tol:
            return False, rmax, ["boundary degeneracy"]
        return True, rmax, []
    return True, rmax, []


def lemma2_certificate(
    h: Polynomial,
    e: Polynomial,
    lam,
    k: int,
    c: float,
    samples: int = DEFAULT_CERT_SAMPLES,
    tol=None,
    verify_degree_cap: int = 64,
    e_degree: int | None = None,
) -> Lemma2Certificate:
    """Check the hypotheses of the perturbed Theorem-1 construction.

    ``e_degree`` is the formal degree m of ``e`` (it may exceed the actual
    degree when leading coefficients vanish).  When the certificate is valid
    and the assembled degree ``2k`` is at most ``verify_degree_cap``, the
    assembled polynomial is also root-checked.
    """
    n = h.degree
    m = (e.degree if not e.is_zero else 0) if e_degree is None else e_degree
    if k <= max(m, n):
        raise ValueError(f"need k > max(m, n) = {max(m, n)}")
    with mp.workprec(h.precision_bits):
        lam = mpc(lam)
        ltol = mpf(2) ** (-(h.precision_bits // 2)) if tol is None else mpf(tol)
        if abs(abs(lam) - 1) > ltol:
            raise ValueError("lambda must lie on the unit circle")
    c = float(c)
    h_min = certified_min_on_circle(h, samples)
    e_max = certified_max_on_circle(e, samples)
    diags = []
    if h_min.certified_bound < c:
        diags.append("insufficient samples" if h_min.sampled_extremum >= c else "min |h| below c")
    if e_max.certified_bound > c:
        diags.append("insufficient samples" if e_max.sampled_extremum <= c else "max |e| above c")
    inside, rmax, more = _h_roots_inside(h, h_min)
    diags.extend(more)
    if c <= 0:
        diags.append("c must be positive")
    valid = not diags
    verified = dev = None
    if valid and 2 * k <= verify_degree_cap:
        from .families import lemma2_polynomial

        P = lemma2_polynomial(h, e, lam, k, m)
        rep = all_roots(P)
        dev = rep.max_modulus_deviation
        verified = bool(rep.converged and dev <= unimodularity_tol(P.precision_bits))
    return Lemma2Certificate(
        h, e, lam, k, c, h_min, e_max, inside, valid, n, m, tuple(dict.fromkeys(diags)), rmax, verified, dev
    )


def family_certificate(family, k: int, r: int, c: float, samples: int = DEFAULT_CERT_SAMPLES, **kw) -> Lemma2Certificate:
    """Certificate for the main/error splitting of a family's monic companion."""
    from .families import lemma2_params

    h, _, e2, lam, K, m, _ = lemma2_params(family, k, r)
    return lemma2_certificate(h, e2, lam, K, c, samples=samples, e_degree=m, **kw)
