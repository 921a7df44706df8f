"""Unit-circle criteria for self-inversive polynomials.

``cohn`` is an equivalence; every other check is a sufficient condition.
The infimum-type conditions are evaluated as witness searches: the verdict
is decided by evaluating the inequality at the best witness found, so a
``holds=True`` answer never depends on having located the true infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpc, mpf

from .poly import (
    NotSelfInversiveError,
    Polynomial,
    SelfInversiveForm,
    construct_theorem1,
    derivative,
    detect_self_inversive,
)
from .roots import NonConvergenceError, all_roots, max_root_modulus, unimodularity

CRITERIA = (
    "cohn",
    "lakatos",
    "lakatos_losonczi_half",
    "lakatos_losonczi_alpha",
    "smyth_inf_mu",
    "schinzel",
)

@dataclass(frozen=True)
class Witness:
    mu: mpc | None = None
    c: mpc | None = None
    alpha: mpf | None = None
    margin: mpf | None = None


@dataclass(frozen=True)
class CriterionVerdict:
    criterion_id: str
    holds: bool
    witness: Witness | None = None
    is_iff: bool = False
    applicable: bool = True
    strict: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def margin(self):
        return None if self.witness is None else self.witness.margin

    def to_json(self) -> dict:
        w = self.witness
        wit = None
        if w is not None:
            wit = {
                "mu": None if w.mu is None else [mp.nstr(w.mu.real, 20), mp.nstr(w.mu.imag, 20)],
                "c": None if w.c is None else [mp.nstr(w.c.real, 20), mp.nstr(w.c.imag, 20)],
                "alpha": None if w.alpha is None else mp.nstr(w.alpha, 20),
                "margin": None if w.margin is None else mp.nstr(w.margin, 20),
            }
        return {
            "criterion_id": self.criterion_id,
            "holds": self.holds,
            "is_iff": self.is_iff,
            "applicable": self.applicable,
            "strict": self.strict,
            "witness": wit,
            "details": {k: (mp.nstr(v, 20) if isinstance(v, (mpf, mpc)) else v) for k, v in self.details.items()},
        }


def _form(P) -> SelfInversiveForm | None:
    if isinstance(P, SelfInversiveForm):
        return P
    try:
        return detect_self_inversive(P)
    except NotSelfInversiveError:
        return None


def _poly(P) -> Polynomial:
    return P.poly if isinstance(P, SelfInversiveForm) else P


def _slack(p: Polynomial) -> mpf:
    """Rounding allowance for comparing sums of |coefficients|."""
    return (p.degree + 2) * mpf(2) ** (-(p.precision_bits - 16)) * abs(p.leading)


def _not_applicable(cid: str, reason: str) -> CriterionVerdict:
    return CriterionVerdict(cid, False, None, applicable=False, details={"reason": reason})


def _is_reciprocal(form: SelfInversiveForm | None) -> bool:
    if form is None:
        return False
    p = form.poly
    tol = form.tol * max(abs(c) for c in p.coeffs)
    return p.is_real(tol) and abs(form.epsilon - 1) <= form.tol


def cohn(P, tol=None) -> CriterionVerdict:
    """Self-inversive and every zero of P' in |z| <= 1 (up to ``tol``)."""
    p = _poly(P)
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    form = _form(P)
    if form is None:
        return CriterionVerdict("cohn", False, None, is_iff=True, details={"reason": "not self-inversive"})
    with mp.workprec(p.precision_bits):
        tol = mpf(2) ** (-(p.precision_bits // 3)) if tol is None else mpf(tol)
        if p.degree == 1:
            return CriterionVerdict("cohn", True, Witness(margin=mpf(1)), is_iff=True)
        rmax = max_root_modulus(derivative(p))
        margin = 1 - rmax
        return CriterionVerdict(
            "cohn", bool(rmax <= 1 + tol), Witness(margin=margin), is_iff=True, details={"max_derivative_root": rmax}
        )


def lakatos(P, tol=None) -> CriterionVerdict:
    """|A_d| >= sum_{j=0}^{d} |A_j - A_d| for real reciprocal P."""
    p = _poly(P)
    form = _form(P)
    if not _is_reciprocal(form):
        return _not_applicable("lakatos", "needs a real reciprocal polynomial")
    with mp.workprec(p.precision_bits):
        ad = p.leading
        rhs = mp.fsum(abs(a - ad) for a in p.coeffs)
        margin = abs(ad) - rhs
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict(
            "lakatos", bool(margin >= -slack), Witness(mu=mpc(1), c=mpc(1), margin=margin), strict=bool(margin > slack)
        )


def lakatos_losonczi_half(P, tol=None) -> CriterionVerdict:
    """|A_d| >= (1/2) sum_{j=1}^{d-1} |A_j|."""
    p = _poly(P)
    if _form(P) is None:
        return _not_applicable("lakatos_losonczi_half", "not self-inversive")
    with mp.workprec(p.precision_bits):
        rhs = mp.fsum(abs(a) for a in p.coeffs[1:-1]) / 2
        margin = abs(p.leading) - rhs
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict("lakatos_losonczi_half", bool(margin >= -slack), Witness(alpha=mpf(1), margin=margin))


def _alpha_margin(p: Polynomial, alpha) -> mpf:
    ad = p.leading
    rhs = mp.fsum(abs(a - (1 - alpha) * ad) for a in p.coeffs[1:-1])
    return abs((1 + alpha) * ad) - rhs


def lakatos_losonczi_alpha(P, alpha, tol=None) -> CriterionVerdict:
    """|(1+alpha) A_d| >= sum_{j=1}^{d-1} |A_j - (1-alpha) A_d|, 0 <= alpha <= 1."""
    p = _poly(P)
    with mp.workprec(p.precision_bits):
        alpha = mpf(alpha)
        if not 0 <= alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")
        if not _is_reciprocal(_form(P)):
            return _not_applicable("lakatos_losonczi_alpha", "needs a real reciprocal polynomial")
        margin = _alpha_margin(p, alpha)
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict("lakatos_losonczi_alpha", bool(margin >= -slack), Witness(alpha=alpha, margin=margin))


def best_alpha(P, grid_size: int = 256, tol=None) -> CriterionVerdict:
    """Scan alpha on a uniform grid, then ternary-search around the best point."""
    p = _poly(P)
    if not _is_reciprocal(_form(P)):
        return _not_applicable("lakatos_losonczi_alpha", "needs a real reciprocal polynomial")
    with mp.workprec(p.precision_bits):
        grid = [mpf(i) / grid_size for i in range(grid_size + 1)]
        vals = [_alpha_margin(p, a) for a in grid]
        i = max(range(len(grid)), key=lambda t: vals[t])
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid_size)]
        for _ in range(60):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if _alpha_margin(p, m1) < _alpha_margin(p, m2):
                lo = m1
            else:
                hi = m2
        cands = [(vals[i], grid[i]), (_alpha_margin(p, (lo + hi) / 2), (lo + hi) / 2)]
        margin, alpha = max(cands, key=lambda t: t[0])
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict("lakatos_losonczi_alpha", bool(margin >= -slack), Witness(alpha=alpha, margin=margin))


def smyth_value(P, mu) -> mpf:
    """(1/2) sum_{j=0}^{d-1} |A_j - mu A_{j+1}|."""
    p = _poly(P)
    with mp.workprec(p.precision_bits):
        mu = mpc(mu)
        cs = p.coeffs
        return mp.fsum(abs(cs[j] - mu * cs[j + 1]) for j in range(len(cs) - 1)) / 2


def _golden_min(f, lo, hi, iters: int):
    """Golden-section minimum on [lo, hi]; both probes are recomputed from the
    bracket each step so rounding in the ratio cannot accumulate."""
    g = (mp.sqrt(5) - 1) / 2
    a, b = lo, hi
    best = (a, f(a))
    for _ in range(iters):
        x1, x2 = b - g * (b - a), a + g * (b - a)
        f1, f2 = f(x1), f(x2)
        if f1 <= f2:
            b = x2
            cand = (x1, f1)
        else:
            a = x1
            cand = (x2, f2)
        if cand[1] <= best[1]:
            best = cand
        if b - a <= mp.eps * (1 + abs(a)):
            break
    return best


def smyth_inf_mu(P, grid_size: int = 4096, tol=None) -> CriterionVerdict:
    """|A_d| >= (1/2) inf_{|mu|=1} sum |A_j - mu A_{j+1}|, searched over mu = e^{i theta}.

    ``details`` carries the certified upper bound on the infimum (the value
    at the witness) and a Lipschitz lower bound from the grid.
    """
    p = _poly(P)
    if _form(P) is None:
        return _not_applicable("smyth_inf_mu", "not self-inversive")
    cs = np.array(p.to_complex())
    theta = 2 * np.pi * np.arange(grid_size) / grid_size
    mus = np.exp(1j * theta)
    vals = 0.5 * np.abs(cs[None, :-1] - mus[:, None] * cs[None, 1:]).sum(axis=1)
    best = int(np.argmin(vals))
    lip = float(np.abs(cs[1:]).sum())
    # grid minimum minus the Lipschitz step, less a float rounding allowance
    lower = float(vals[best]) - lip * math.pi / grid_size - 1e-12 * (1 + lip)
    with mp.workprec(p.precision_bits):
        step = 2 * mp.pi / grid_size
        t0 = mpf(theta[best])

        def f(t):
            return smyth_value(p, mp.expjpi(t / mp.pi))

        t_best, v_best = _golden_min(f, t0 - step, t0 + step, 3 * p.precision_bits // 2)
        v0 = f(t0)
        if v0 <= v_best:  # the objective has kinks; keep an exact grid hit
            t_best, v_best = t0, v0
        mu = mp.expjpi(t_best / mp.pi)
        margin = abs(p.leading) - v_best
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict(
            "smyth_inf_mu",
            bool(margin >= -slack),
            Witness(mu=mu, margin=margin),
            details={"inf_upper_bound": v_best, "inf_lower_bound": mpf(lower), "lipschitz": mpf(lip), "theta": t_best},
        )


def _schinzel_sum(cs, d, c, mu) -> mpf:
    ad = cs[d]
    return mp.fsum(abs(c * cs[j] - mu ** (d - j) * ad) for j in range(d + 1))


def _weiszfeld(points: np.ndarray, weights: np.ndarray, iters: int) -> np.ndarray:
    """Weighted geometric median in the complex plane, vectorized over rows."""
    w = weights[None, :]
    c = (points * w).sum(axis=1) / w.sum()
    # start from the best data point if it beats the weighted mean
    obj = lambda cc: (np.abs(cc[:, None] - points) * w).sum(axis=1)
    pt_obj = (np.abs(points[:, :, None] - points[:, None, :]) * w[:, None, :]).sum(axis=2)
    best_pt = points[np.arange(len(points)), pt_obj.argmin(axis=1)]
    c = np.where(obj(best_pt) < obj(c), best_pt, c)
    for _ in range(iters):
        dist = np.abs(c[:, None] - points)
        dist = np.maximum(dist, 1e-300 + 1e-15 * np.abs(points))  # nudge off data points
        inv = w / dist
        c_new = (points * inv).sum(axis=1) / inv.sum(axis=1)
        better = obj(c_new) <= obj(c)
        c = np.where(better, c_new, c)
    return c


def schinzel(P, mu_grid: int = 512, c_iters: int = 50, tol=None) -> CriterionVerdict:
    """|A_d| >= inf_{c, |mu|=1} sum_{j=0}^{d} |c A_j - mu^(d-j) A_d|.

    For fixed mu the inner problem is a weighted geometric median of the
    points ``mu^(d-j) A_d / A_j`` with weights ``|A_j|``; it is solved by
    Weiszfeld iteration over a mu grid, the best mu is refined by golden
    section, and (c, mu) = (1, 1) is always tried.
    """
    p = _poly(P)
    if _form(P) is None:
        return _not_applicable("schinzel", "not self-inversive")
    d = p.degree
    cs = np.array(p.to_complex())
    nz = np.nonzero(cs)[0]
    theta = 2 * np.pi * np.arange(mu_grid) / mu_grid
    mus = np.exp(1j * theta)
    pts = (mus[:, None] ** (d - nz)[None, :]) * cs[d] / cs[nz][None, :]
    wts = np.abs(cs[nz])
    cbest = _weiszfeld(pts, wts, c_iters)
    zero_part = (d + 1 - len(nz)) * abs(cs[d])
    vals = (np.abs(cbest[:, None] - pts) * wts[None, :]).sum(axis=1) + zero_part
    i = int(np.argmin(vals))
    with mp.workprec(p.precision_bits):
        mcs = p.coeffs
        step = 2 * mp.pi / mu_grid

        def inner(t):
            mu = mp.expjpi(t / mp.pi)
            pt = np.array([complex(mu ** (d - j) * mcs[d] / mcs[j]) for j in nz])[None, :]
            c = _weiszfeld(pt, wts, c_iters)[0]
            return _schinzel_sum(mcs, d, mpc(c), mu), mpc(c), mu

        def f(t):
            return inner(t)[0]

        t_best, _ = _golden_min(f, mpf(theta[i]) - step, mpf(theta[i]) + step, 40)
        cands = [inner(t_best), inner(mpf(theta[i])), (_schinzel_sum(mcs, d, mpc(1), mpc(1)), mpc(1), mpc(1))]
        value, c, mu = min(cands, key=lambda t: t[0])
        margin = abs(mcs[d]) - value
        slack = _slack(p) if tol is None else mpf(tol)
        return CriterionVerdict(
            "schinzel", bool(margin >= -slack), Witness(mu=mu, c=c, margin=margin), details={"inf_upper_bound": value}
        )


@dataclass(frozen=True)
class ObservationScan:
    first_failing_d: int | None
    rows: tuple  # (d, verdict or None, deviation or None, converged)


def observation_scan(h: Polynomial, lam, d_max: int, tol=None) -> ObservationScan:
    """Build z^(d-n) h + lam h* for d = n+1..d_max and test each for unimodularity."""
    n = h.degree
    rows = []
    first = None
    for d in range(n + 1, d_max + 1):
        P = construct_theorem1(h, d, lam)
        try:
            ok, dev = unimodularity(P, tol)
            rows.append((d, ok, dev, True))
        except NonConvergenceError:
            rows.append((d, None, None, False))
            continue
        if not ok and first is None:
            first = d
    return ObservationScan(first, tuple(rows))


def run_all(P, only=None, **kw) -> list[CriterionVerdict]:
    ids = CRITERIA if not only else tuple(only)
    unknown = set(ids) - set(CRITERIA)
    if unknown:
        raise ValueError(f"unknown criteria: {sorted(unknown)}")
    out = []
    for cid in ids:
        if cid == "lakatos_losonczi_alpha":
            out.append(best_alpha(P))
        else:
            out.append(globals()[cid](P))
    return out
