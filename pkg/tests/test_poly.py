from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from unicircle.poly import (
    NotSelfInversiveError,
    Polynomial,
    ZeroPolynomialError,
    add,
    construct_theorem1,
    derivative,
    derivative_decomposition,
    detect_self_inversive,
    evaluate,
    is_self_inversive,
    max_coeff_distance,
    multiply,
    scale,
    star,
    strip_low_zeros,
)

small = st.integers(-9, 9)
cplx = st.tuples(small, small)
coeff_lists = st.lists(cplx, min_size=1, max_size=8).filter(lambda cs: cs[-1] != (0, 0))


def unit(t, prec=256):
    with mp.workprec(prec):
        return mp.expj(t)


def P(*cs, prec=256):
    return Polynomial(cs, prec)


def test_trailing_zeros_trimmed():
    p = P(1, 2, 0, 0)
    assert p.degree == 1
    assert P().degree == -1 and P(0, 0).is_zero


def test_precision_floor():
    with pytest.raises(ValueError):
        Polynomial((1,), 32)


def test_fraction_and_pair_inputs():
    p = Polynomial((Fraction(1, 3), ("0.5", "-2")), 128)
    with mp.workprec(128):
        assert abs(p.coeffs[0] - mpf(1) / 3) < mpf(2) ** -126
    assert p.coeffs[1] == mpc("0.5", "-2")


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        Polynomial((float("nan"), 1))


def test_evaluate_horner():
    p = P(-1, -1, 0, 1)
    assert evaluate(p, 2) == 5
    assert p(0) == -1


def test_derivative():
    assert derivative(P(-1, -1, 0, 1)).coeffs == P(-1, 0, 3).coeffs
    with pytest.raises(ZeroPolynomialError, match="zero input"):
        derivative(P())


def test_star_examples():
    assert star(P(1, 2, 3)).coeffs == P(3, 2, 1).coeffs
    h = Polynomial(((0, 1), 1))  # i + z
    assert star(h).coeffs == Polynomial((1, (0, -1))).coeffs
    # declared degree above the actual degree pads the reversed vector
    assert star(P(1, 1), 3).coeffs == P(0, 0, 1, 1).coeffs


def test_star_zero_raises():
    with pytest.raises(ZeroPolynomialError):
        star(P())


@given(coeff_lists)
def test_star_is_an_involution(cs):
    h = Polynomial(tuple(cs))
    if h.coeffs[0] == 0:
        n = h.degree
        assert star(star(h, n), n).coeffs == h.coeffs
    else:
        assert star(star(h)).coeffs == h.coeffs


def test_detect_examples():
    f = detect_self_inversive(P(1, 1, 1))
    assert f.epsilon == 1
    f = detect_self_inversive(P(-1, 0, 1))
    assert f.epsilon == -1
    with pytest.raises(NotSelfInversiveError) as exc:
        detect_self_inversive(P(2, 0, 1))
    assert exc.value.index == 0
    with pytest.raises(NotSelfInversiveError):
        detect_self_inversive(P(0, 1))


def test_detect_reports_failing_index():
    with pytest.raises(NotSelfInversiveError) as exc:
        detect_self_inversive(P(1, 2, 3, 1))
    assert exc.value.index == 1


@given(coeff_lists, st.floats(0, 6.283))
def test_theorem1_construction_is_self_inversive(cs, t):
    h = Polynomial(tuple(cs))
    lam = unit(t)
    for d in (h.degree + 1, h.degree + 3):
        Pd = construct_theorem1(h, d, lam)
        f = detect_self_inversive(Pd)
        assert abs(f.epsilon - lam) < mpf(2) ** -100


def test_theorem1_degree_constraint():
    with pytest.raises(ValueError, match="d>n"):
        construct_theorem1(P(1, 1), 1, 1)


def test_theorem1_lambda_on_circle():
    with pytest.raises(ValueError):
        construct_theorem1(P(1, 1), 3, 2)


def test_counterexample_shape():
    # z^k (z^3 - z - 1) + (z^3 + z^2 - 1) with k = 2
    h = P(-1, -1, 0, 1)
    Pd = construct_theorem1(h, 5, -1)
    assert Pd.coeffs == P(1, 0, -1, -2, 0, 1).coeffs or Pd.coeffs == add(
        Polynomial((0, 0, -1, -1, 0, 1)), P(-1, 0, 1, 1)
    ).coeffs


@given(coeff_lists, st.floats(0, 6.283), st.integers(1, 4))
def test_converse_round_trip(cs, t, extra):
    h = Polynomial(tuple(cs))
    d = h.degree + extra
    Pd = construct_theorem1(h, d, unit(t))
    g, eps = derivative_decomposition(detect_self_inversive(Pd))
    # P = z P'/d + eps (P'/d)* with formal degree d-1 for the adjoint
    rebuilt = add(multiply(P(0, 1), g), scale(star(g, d - 1), eps))
    assert max_coeff_distance(rebuilt, Pd, relative=True) < mpf(2) ** -200


def test_strip_low_zeros():
    q, v = strip_low_zeros(P(0, 0, 3, 1))
    assert v == 2 and q.coeffs == P(3, 1).coeffs


def test_json_round_trip():
    p = Polynomial((mp.pi, (1, mp.e)), 200)
    q = Polynomial.from_json(p.to_json())
    assert q.precision_bits == 200
    assert q.coeffs == p.coeffs


def test_is_self_inversive_matches_detect():
    assert is_self_inversive(P(1, 3, 1))
    assert not is_self_inversive(P(1, 3, 2))


def test_from_roots():
    p = Polynomial.from_roots([1, -1])
    assert p.coeffs == P(-1, 0, 1).coeffs
