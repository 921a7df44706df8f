"""Acceptance criteria 1-11 at their stated tolerances.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
is a test and a PASS/FAIL line per criterion is printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

from __future__ import annotations

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from mpmath import mp, mpf

sys.path.insert(0, str(Path(__file__).parent))

from oracles import bernoulli_akiyama_tanigawa, euler_seidel, zeta_direct  # noqa: E402
from unicircle.certify import certified_max_on_circle, certified_min_on_circle, family_certificate  # noqa: E402
from unicircle.criteria import cohn, observation_scan  # noqa: E402
from unicircle.families import (  # noqa: E402
    build_P,
    counterexample_poly,
    decompose,
    h_r_of,
    lemma3_scan,
    lemma5_scan,
    ramanujan_residual,
)
from unicircle.poly import (  # noqa: E402
    Polynomial,
    add,
    construct_theorem1,
    derivative_decomposition,
    detect_self_inversive,
    max_coeff_distance,
    multiply,
    scale,
    star,
)
from unicircle.roots import all_roots, convex_hull_containment, unimodularity  # noqa: E402
from unicircle.special import bernoulli, euler_number, zeta, zeta_even  # noqa: E402

RESULTS: dict[int, tuple[bool, str, float]] = {}
SEED = 20240611


def _unit(t, prec=256):
    with mp.workprec(prec):
        return mp.expj(t)


def _disk_points(rng, n, rmax):
    r = rmax * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi, n))


# -- criteria ------------------------------------------------------------------------


def criterion_1():
    worst, bad = 0.0, []
    for k in range(2, 101):
        rep = all_roots(build_P(k))
        dev = float(rep.max_modulus_deviation)
        worst = max(worst, dev)
        if not (rep.converged and dev < 1e-20 and len(rep.roots) == 2 * k):
            bad.append(k)
    return not bad, f"P_k, k=2..100: max ||root|-1| = {worst:.2e}; failing k: {bad or 'none'}"


def criterion_2():
    h_bound = certified_min_on_circle(h_r_of("P", 4), 2**20)
    theta_ok = abs(h_bound.theta_at - 0.20325951) < 1e-6
    min_ok = abs(h_bound.refined_extremum - 0.0214) < 5e-4
    bad, worst_e = [], 0.0
    for k in range(11, 201):
        c = family_certificate("P", k, 4, 0.020, samples=2**20, verify_degree_cap=0)
        worst_e = max(worst_e, c.e_max_bound.certified_bound)
        if not (c.valid and c.h_min_bound.certified_bound >= 0.020 and c.e_max_bound.certified_bound <= 0.019):
            bad.append(k)
    ok = theta_ok and min_ok and not bad
    return ok, (
        f"h_4 min {h_bound.refined_extremum:.6f} at theta {h_bound.theta_at:.8f} "
        f"(certified >= {h_bound.certified_bound:.5f}); max certified |e_4| = {worst_e:.5f}; failing k: {bad or 'none'}"
    )


def criterion_3():
    with mp.workprec(256):
        closed = mp.pi**3 / 24 - mp.pi + 2
        h2_at_1 = abs(h_r_of("Q", 2)(1))
    h2_ok = abs(h2_at_1 - closed) < 1e-12
    bad_q = [k for k in range(8, 101) if not family_certificate("Q", k, 2, 0.15, verify_degree_cap=0).valid]
    bad_w, worst_e3 = [], 0.0
    for k in range(6, 101):
        c = family_certificate("W", k, 3, 0.52, verify_degree_cap=0)
        worst_e3 = max(worst_e3, c.e_max_bound.certified_bound)
        if not (c.valid and c.e_max_bound.certified_bound <= 0.5):
            bad_w.append(k)
    ok = h2_ok and not bad_q and not bad_w
    return ok, (
        f"|h_2(1)| = {mp.nstr(h2_at_1, 12)}; Q failing k: {bad_q or 'none'}; "
        f"W failing k: {bad_w or 'none'}; max certified |e_3| = {worst_e3:.4f}"
    )


def criterion_4():
    r3 = lemma3_scan(range(2, 61))
    r5 = lemma5_scan(range(2, 61))
    counted = [r for r in r3.rows + r5.rows if not r.flagged]
    min_margin = min(r.margin for r in counted)
    ok = r3.ok and r5.ok and min_margin > 0
    return ok, (
        f"{len(r3.rows)} + {len(r5.rows)} rows, violations {len(r3.violations)} + {len(r5.violations)}, "
        f"smallest margin {mp.nstr(min_margin, 3)}; eta0 j=1 rows outside the bound: {len(r5.flagged)}"
    )


def criterion_5():
    rng = np.random.default_rng(SEED)
    agree = total = on_circle = 0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        d = int(rng.integers(n + 1, 13))
        mode = rng.integers(0, 3)
        if mode == 0:
            roots = _disk_points(rng, n, 0.95)
        elif mode == 1:
            roots = _disk_points(rng, n, 2.5)
        else:
            roots = 1.05 + 1.5 * rng.uniform(0, 1, n)
            roots = roots * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        P = construct_theorem1(Polynomial.from_roots(roots), d, _unit(float(rng.uniform(0, 2 * np.pi))))
        direct, _ = unimodularity(P)
        on_circle += direct
        agree += cohn(P).holds == direct
        total += 1
    return agree == total, f"{agree}/{total} agree ({on_circle} unimodular, {total - on_circle} not)"


def criterion_6():
    rng = np.random.default_rng(SEED + 1)
    worst_dev, worst_rt, bad = 0.0, mpf(0), 0
    for _ in range(500):
        n = int(rng.integers(1, 7))
        h = Polynomial.from_roots(_disk_points(rng, n, 0.98))
        d = n + int(rng.integers(1, 11))
        P = construct_theorem1(h, d, _unit(float(rng.uniform(0, 2 * np.pi))))
        ok, dev = unimodularity(P, tol=1e-20)
        g, eps = derivative_decomposition(detect_self_inversive(P))
        rebuilt = add(multiply(Polynomial((0, 1)), g), scale(star(g, d - 1), eps))
        rt = max_coeff_distance(rebuilt, P, relative=True)
        worst_dev, worst_rt = max(worst_dev, float(dev)), max(worst_rt, rt)
        bad += not (ok and rt < 1e-30)
    return bad == 0, f"500 constructions: max deviation {worst_dev:.2e}, max round-trip error {mp.nstr(worst_rt, 3)}"


def criterion_7():
    rng = np.random.default_rng(SEED + 2)
    passed = 0
    for _ in range(500):
        d = int(rng.integers(2, 11))
        cs = rng.normal(size=(d + 1, 2)) * rng.uniform(0.1, 3)
        cs = [complex(a, b) for a, b in cs]
        passed += convex_hull_containment(Polynomial(tuple(cs)), tol=1e-12)
    return passed == 500, f"{passed}/500 contained"


def criterion_8():
    low = [k for k in range(0, 8) if not unimodularity(counterexample_poly(k))[0]]
    scan = observation_scan(Polynomial((-1, -1, 0, 1)), -1, 60)
    first = scan.first_failing_d
    ok = not low and first is not None
    k_first = None if first is None else first - 3
    return ok, f"k <= 7 all unimodular: {not low}; first failing d = {first} (k = {k_first})"


def criterion_9():
    grids = {"P": (range(9, 61), 4), "Q": (range(8, 61), 2), "W": (range(6, 61), 3)}
    worst = mpf(0)
    for fam, (ks, r) in grids.items():
        for k in ks:
            worst = max(worst, decompose(fam, k, r).reconstruction_error)
    return worst < 1e-40, f"M_k, N_k, V_k sweep: max relative reconstruction error {mp.nstr(worst, 3)}"


def criterion_10():
    worst = mpf(0)
    for k in range(2, 6):
        for z in (1, "1.5", 2):
            worst = max(worst, ramanujan_residual(k, z, precision=128))
    return worst < 1e-25, f"max residual {mp.nstr(worst, 3)}"


def criterion_11():
    b_ok = all(bernoulli(n) == bernoulli_akiyama_tanigawa(n) for n in range(61))
    e_ok = all(euler_number(n) == euler_seidel(n) for n in range(61))
    ref, err = zeta_direct(3, 128)
    with mp.workprec(160):
        z3_err = abs(zeta(3, 128).value - ref)
    worst = mpf(0)
    for j in range(1, 31):
        b = bernoulli(2 * j)
        with mp.workprec(200):
            lhs = (-1) ** (j + 1) * mpf(b.numerator) / b.denominator * (2 * mp.pi) ** (2 * j) / (2 * math.factorial(2 * j))
            worst = max(worst, abs(lhs - zeta(2 * j, 200).value), abs(lhs - zeta_even(2 * j, 200).value))
    ok = b_ok and e_ok and err < 1e-30 and z3_err < 1e-30 and worst <= mpf(2) ** -120
    return ok, (
        f"Bernoulli oracle {b_ok}, Euler oracle {e_ok}, |zeta(3) - direct| = {mp.nstr(z3_err, 3)}, "
        f"Bernoulli-zeta max error {mp.nstr(worst, 3)}"
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _run(i: int) -> tuple[bool, str]:
    t = time.perf_counter()
    ok, detail = CRITERIA[i - 1]()
    RESULTS[i] = (ok, detail, time.perf_counter() - t)
    return ok, detail


def summary_lines() -> list[str]:
    return [
        f"criterion {i:2d}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {detail}"
        for i, (ok, detail, secs) in sorted(RESULTS.items())
    ]


@pytest.mark.slow
@pytest.mark.parametrize("i", range(1, 12))
def test_criterion(i):
    ok, detail = _run(i)
    assert ok, detail


if __name__ == "__main__":
    for i in range(1, 12):
        _run(i)
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
