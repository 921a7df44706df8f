"""Simultaneous (Aberth-Ehrlich) root finding and unit-circle verdicts.

Iteration starts from a fixed circle of guesses, runs in complex128 until
the double-precision corrections stall, then continues at the polynomial's
full precision.  Both stages are plain Aberth updates, so the result is
deterministic for a given input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpc, mpf
from shapely.geometry import MultiPoint, Point

from .poly import Polynomial, derivative

ANGLE_OFFSET = 0.4


class NonConvergenceError(RuntimeError):
    """The root finder hit ``max_iter`` without meeting either criterion."""

    def __init__(self, message: str, report: "RootReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class RootReport:
    roots: tuple
    residuals: tuple
    max_modulus_deviation: mpf
    iterations: int
    converged: bool
    precision_bits: int
    clusters: tuple = field(default=())

    @property
    def max_modulus(self) -> mpf:
        with mp.workprec(self.precision_bits):
            return max((abs(r) for r in self.roots), default=mpf(0))

    def to_json(self) -> dict:
        from mpmath.libmp import to_str

        digits = math.ceil(self.precision_bits * math.log10(2)) + 2
        return {
            "roots": [[to_str(r.real._mpf_, digits), to_str(r.imag._mpf_, digits)] for r in self.roots],
            "residuals": [mp.nstr(x, 6) for x in self.residuals],
            "max_modulus_deviation": mp.nstr(self.max_modulus_deviation, 10),
            "iterations": self.iterations,
            "converged": self.converged,
            "clusters": [list(c) for c in self.clusters],
        }


def unimodularity_tol(precision_bits: int) -> mpf:
    return mpf(2) ** (-(precision_bits // 3))


def initial_guesses(coeffs: list[complex]) -> np.ndarray:
    d = len(coeffs) - 1
    lead = abs(coeffs[-1])
    radius = 1.0 + max(abs(c) / lead for c in coeffs[:-1])
    angles = 2 * np.pi * np.arange(d) / d + ANGLE_OFFSET
    return radius * np.exp(1j * angles)


def _aberth_double(coeffs: list[complex], z: np.ndarray, max_iter: int) -> tuple[np.ndarray, int]:
    a = np.array(coeffs[::-1], dtype=complex)  # descending for polyval
    da = np.polyder(a)
    d = len(z)
    eye = np.eye(d, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        p = np.polyval(a, z)
        dp = np.polyval(da, z)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            diff[eye] = 1
            inv = 1 / diff
            inv[eye] = 0
            w = ratio / (1 - ratio * inv.sum(axis=1))
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 0
        z = z - w
        scale = np.maximum(np.abs(z), 1.0)
        if np.all(np.abs(w) <= 1e-14 * scale):
            break
    return z, it


def _horner2(coeffs, x):
    p = mpc(0)
    dp = mpc(0)
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _residual(coeffs, x) -> mpf:
    ax = abs(x)
    p = mpc(0)
    scale = mpf(0)
    for c in reversed(coeffs):
        p = p * x + c
        scale = scale * ax + abs(c)
    return abs(p) / scale if scale else abs(p)


def all_roots(p: Polynomial, precision: int | None = None, max_iter: int = 200) -> RootReport:
    """All complex roots of ``p`` with multiplicity.

    ``converged`` is set when the largest Aberth correction drops below
    ``2^(-precision/2)`` or every normalized residual reaches rounding level
    (the latter admits clustered roots whose corrections stagnate).
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    prec = precision or p.precision_bits
    d = p.degree
    cd = p.to_complex()
    z0 = initial_guesses(cd)
    try:
        zd, it_double = _aberth_double(cd, z0, max_iter=max(100, 5 * d))
    except FloatingPointError:  # pragma: no cover - defensive
        zd, it_double = z0, 0
    if not np.all(np.isfinite(zd)):
        zd, it_double = z0, 0

    with mp.workprec(prec + 8):
        coeffs = [mpc(c) for c in p.coeffs]
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        z = [mpc(complex(x)) for x in zd]
        step_tol = mpf(2) ** (-(prec // 2))
        res_tol = (d + 1) * mpf(2) ** (-(prec - 8))
        converged = False
        it = 0
        for it in range(1, max_iter + 1):
            max_step = mpf(0)
            for i in range(d):
                zi = z[i]
                pv, dpv = _horner2(coeffs, zi)
                if pv == 0:
                    continue
                s = mpc(0)
                for j in range(d):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s += 1 / diff
                ratio = pv / dpv if dpv != 0 else mpc(0)
                den = 1 - ratio * s
                w = ratio / den if den != 0 else ratio
                z[i] = zi - w
                aw = abs(w) / max(1, abs(z[i]))
                if aw > max_step:
                    max_step = aw
            if max_step < step_tol:
                converged = True
                break
            if it % 4 == 0 and all(_residual(coeffs, x) <= res_tol for x in z):
                converged = True
                break
        residuals = tuple(_residual(coeffs, x) for x in z)
        if not converged and all(r <= res_tol for r in residuals):
            converged = True
        zc = [complex(x) for x in z]
        order = sorted(range(d), key=lambda i: (math.atan2(zc[i].imag, zc[i].real), abs(zc[i])))
        roots = [z[i] for i in order]
        residuals = tuple(residuals[i] for i in order)
        # an m-fold root splits into a small polygon of approximations;
        # collapse it only if p itself vanishes to rounding level there
        clusters = []
        for group in _clusters(roots, mpf(2) ** (-(prec // 8))):
            centre = _polish_multiple(coeffs, mp.fsum(roots[i] for i in group) / len(group), len(group))
            if _residual(coeffs, centre) <= res_tol:
                clusters.append(group)
                for i in group:
                    roots[i] = centre
        clusters = tuple(clusters)
        roots = tuple(roots)
        dev = max(abs(abs(r) - 1) for r in roots)
    with mp.workprec(prec):
        roots = tuple(+r for r in roots)
    return RootReport(roots, residuals, dev, it_double + it, converged, prec, clusters)


def _polish_multiple(coeffs, x, m: int, steps: int = 30):
    """Newton on the (m-1)-th derivative, which has a simple root at an m-fold root."""
    q = list(coeffs)
    for _ in range(m - 1):
        q = [j * q[j] for j in range(1, len(q))]
    start = x
    for _ in range(steps):
        v, dv = _horner2(q, x)
        if dv == 0:
            break
        step = v / dv
        x -= step
        if abs(step) <= mp.eps * max(1, abs(x)):
            break
    # fall back to the centroid if Newton wandered off the cluster
    if abs(x - start) > mpf(2) ** (-(mp.prec // 8)):
        return start
    return x


def _clusters(roots, radius) -> tuple:
    """Groups of root indices lying within ``radius`` of a group's first member."""
    zc = np.array([complex(r) for r in roots])
    close = np.abs(zc[:, None] - zc[None, :]) < max(float(radius), 1e-300) + 1e-13
    seen = set()
    out = []
    for i in range(len(roots)):
        if i in seen:
            continue
        cand = [j for j in np.nonzero(close[i])[0] if j > i and j not in seen]
        group = [int(j) for j in cand if abs(roots[j] - roots[i]) < radius]
        if group:
            seen.update(group)
            out.append((i, *group))
    return tuple(out)


def _converged_roots(p: Polynomial, precision=None, max_iter=200) -> RootReport:
    rep = all_roots(p, precision, max_iter)
    if not rep.converged:
        raise NonConvergenceError(f"root finder did not converge for degree {p.degree}", rep)
    return rep


def unimodularity(p: Polynomial, tol=None, precision=None) -> tuple[bool, mpf]:
    """``(max | |root| - 1 | <= tol, that deviation)``."""
    rep = _converged_roots(p, precision)
    tol = unimodularity_tol(rep.precision_bits) if tol is None else mpf(tol)
    return bool(rep.max_modulus_deviation <= tol), rep.max_modulus_deviation


def max_root_modulus(p: Polynomial, precision=None) -> mpf:
    return _converged_roots(p, precision).max_modulus


def convex_hull_containment(P: Polynomial, tol=1e-12, precision=None) -> bool:
    """True iff every root of P' lies within ``tol`` of the hull of P's roots."""
    if P.degree < 2:
        raise ValueError("need degree >= 2")
    rp = _converged_roots(P, precision).roots
    rq = _converged_roots(derivative(P), precision).roots
    hull = MultiPoint([(float(r.real), float(r.imag)) for r in rp]).convex_hull
    return all(hull.distance(Point(float(r.real), float(r.imag))) <= tol for r in rq)
