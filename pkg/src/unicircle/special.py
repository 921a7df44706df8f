"""Exact Bernoulli/Euler numbers and bounded zeta-type special values.

Every real value comes back as a :class:`RealValue` carrying a rigorous
bound on the distance to the true value (truncation plus rounding).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .poly import DEFAULT_PRECISION

GUARD_BITS = 16

_bern_lock = threading.Lock()
_bern_table: list[Fraction] = [Fraction(1)]
_euler_lock = threading.Lock()
_euler_table: list[int] = [1]


@dataclass(frozen=True)
class RealValue:
    value: mpf
    error_bound: mpf

    def __float__(self):
        return float(self.value)

    @property
    def interval(self) -> tuple[mpf, mpf]:
        return self.value - self.error_bound, self.value + self.error_bound


def _ub(x) -> mpf:
    """Upper-rounded 64-bit copy of a nonnegative bound."""
    with mp.workprec(64):
        return mpf(x) * (1 + mpf(2) ** -60)


def bernoulli(n: int) -> Fraction:
    """B_n from ``sum_{k<=n} C(n+1, k) B_k = 0`` (so ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("bernoulli index must be >= 0")
    with _bern_lock:
        table = _bern_table
        for m in range(len(table), n + 1):
            acc = Fraction(0)
            for k in range(m):
                acc += math.comb(m + 1, k) * table[k]
            table.append(-acc / (m + 1))
        return table[n]


def euler_number(n: int) -> int:
    """E_n from ``cosh(t) * sech(t) = 1``: ``sum_i C(n, 2i) E_{n-2i} = 0``."""
    if n < 0:
        raise ValueError("euler index must be >= 0")
    if n % 2:
        return 0
    with _euler_lock:
        table = _euler_table  # even indices only: table[i] = E_{2i}
        for m in range(len(table), n // 2 + 1):
            two_m = 2 * m
            table.append(-sum(math.comb(two_m, 2 * i) * table[m - i] for i in range(1, m + 1)))
        return table[n // 2]


@lru_cache(maxsize=4096)
def zeta_even(two_k: int, precision: int = DEFAULT_PRECISION) -> RealValue:
    """zeta(2j) = (-1)^(j+1) B_{2j} (2 pi)^(2j) / (2 (2j)!), and zeta(0) = -1/2."""
    if two_k < 0 or two_k % 2:
        raise ValueError("zeta_even needs a nonnegative even integer")
    if two_k == 0:
        with mp.workprec(precision):
            return RealValue(mpf(-1) / 2, mpf(0))
    j = two_k // 2
    b = bernoulli(two_k)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        v = (2 * mp.pi) ** two_k * abs(b.numerator) / (2 * math.factorial(two_k) * b.denominator)
        # pi, the power and the division each contribute a few ulps
        err = v * (two_k + 6) * mpf(2) ** -wp
    with mp.workprec(precision):
        out = +v
        err = err + abs(out) * mpf(2) ** -precision
    return RealValue(out, _ub(err))


@lru_cache(maxsize=None)
def _borwein_d(n: int) -> tuple[int, ...]:
    """Partial sums d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact."""
    out = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        out.append(n * acc)
    assert all(x.denominator == 1 for x in out)
    return tuple(int(x) for x in out)


def _borwein_terms(precision: int) -> int:
    # 3 / (3 + sqrt 8)^n <= 2^-(precision + 8)
    return math.ceil((precision + 10) * math.log(2) / math.log(3 + math.sqrt(8))) + 1


@lru_cache(maxsize=1024)
def zeta(s, precision: int = DEFAULT_PRECISION) -> RealValue:
    """zeta(s) for real s > 1 via Borwein's accelerated alternating series.

    The truncation term is bounded by ``3 / ((3+sqrt 8)^n |1 - 2^(1-s)|)``.
    """
    with mp.workprec(precision + GUARD_BITS):
        s = mpf(s)
    if s <= 1:
        raise ValueError("zeta requires s > 1")
    n = _borwein_terms(precision)
    d = _borwein_d(n)
    wp = precision + GUARD_BITS + n.bit_length() + 4
    with mp.workprec(wp):
        dn = d[n]
        acc = mpf(0)
        for k in range(n):
            term = mpf(d[k] - dn) / (k + 1) ** s
            acc = acc - term if k % 2 else acc + term
        denom = 1 - mpf(2) ** (1 - s)
        v = -acc / (dn * denom)
        trunc = 3 / ((3 + mp.sqrt(8)) ** n * abs(denom))
        rounding = (4 * n + 16) * mpf(2) ** -wp * (1 + abs(v)) / abs(denom)
    with mp.workprec(precision):
        out = +v
        err = trunc + rounding + abs(out) * mpf(2) ** -precision
    return RealValue(out, _ub(err))


def zeta_int(n: int, precision: int = DEFAULT_PRECISION) -> RealValue:
    """zeta at an integer n >= 0 (n != 1); even n use the Bernoulli route."""
    if n == 1 or n < 0:
        raise ValueError("zeta_int needs n = 0 or n >= 2")
    if n % 2 == 0:
        return zeta_even(n, precision)
    return zeta(n, precision)


def _scaled(factor_fn, s, precision: int) -> RealValue:
    z = zeta_int(s, precision) if isinstance(s, int) else zeta(s, precision)
    with mp.workprec(precision + GUARD_BITS):
        f = factor_fn(mpf(s))
        v = f * z.value
        err = abs(f) * z.error_bound + abs(v) * mpf(2) ** -(precision + GUARD_BITS - 2)
    with mp.workprec(precision):
        out = +v
        err = err + abs(out) * mpf(2) ** -precision
    return RealValue(out, _ub(err))


def eta(s, precision: int = DEFAULT_PRECISION) -> RealValue:
    """eta(s) = (1 - 2^(1-s)) zeta(s), s > 1."""
    if s <= 1:
        raise ValueError("eta requires s > 1")
    return _scaled(lambda x: 1 - mpf(2) ** (1 - x), s, precision)


def eta0(s, precision: int = DEFAULT_PRECISION) -> RealValue:
    """eta0(s) = (1 - 2^(-s)) zeta(s), s > 1."""
    if s <= 1:
        raise ValueError("eta0 requires s > 1")
    return _scaled(lambda x: 1 - mpf(2) ** (-x), s, precision)


def eta_at_even(two_j: int, precision: int = DEFAULT_PRECISION) -> RealValue:
    """eta at an even integer, including the limit eta(0) = 1/2."""
    if two_j == 0:
        with mp.workprec(precision):
            return RealValue(mpf(1) / 2, mpf(0))
    return eta(two_j, precision)


def eta0_at_even(two_j: int, precision: int = DEFAULT_PRECISION) -> RealValue:
    """eta0 at an even integer, including eta0(0) = (1 - 1) zeta(0) = 0."""
    if two_j == 0:
        with mp.workprec(precision):
            return RealValue(mpf(0), mpf(0))
    return eta0(two_j, precision)


def l_chi4(odd_s: int, precision: int = DEFAULT_PRECISION) -> RealValue:
    """L(2j+1, chi_4) = (-1)^j E_{2j} / (2 (2j)!) (pi/2)^(2j+1)."""
    if odd_s < 1 or odd_s % 2 == 0:
        raise ValueError("l_chi4 needs an odd integer >= 1")
    j = (odd_s - 1) // 2
    e = euler_number(2 * j)
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        v = (-1) ** j * mpf(e) / (2 * math.factorial(2 * j)) * (mp.pi / 2) ** odd_s
        err = abs(v) * (odd_s + 6) * mpf(2) ** -wp
    with mp.workprec(precision):
        out = +v
        err = err + abs(out) * mpf(2) ** -precision
    return RealValue(out, _ub(err))
