"""Independent reference computations used by the tests."""

import math
from fractions import Fraction

from mpmath import mp, mpf


def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """Akiyama-Tanigawa algorithm; returns B_n with the B_1 = -1/2 convention."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if n == 1 else a[0]


def euler_seidel(n: int) -> int:
    """E_n via the Seidel boustrophedon for the zigzag numbers: E_2m = (-1)^m A_2m."""
    if n % 2:
        return 0
    row = [1]
    zigzag = [1]
    for i in range(1, n + 1):
        new = [0] * (i + 1)
        if i % 2:
            for j in range(1, i + 1):
                new[j] = new[j - 1] + row[j - 1]
        else:
            for j in range(i - 1, -1, -1):
                new[j] = new[j + 1] + row[j]
        row = new
        zigzag.append(row[-1] if i % 2 else row[0])
    return (-1) ** (n // 2) * zigzag[n]


def zeta_direct(s: int, precision: int, N: int = 2000) -> tuple[mpf, mpf]:
    """Partial sum to N plus Euler-Maclaurin tail; returns (value, error bound)."""
    with mp.workprec(precision + 20):
        head = mp.fsum(mpf(n) ** -s for n in range(1, N))
        Nf = mpf(N)
        # sum_{n>=N} n^-s = N^(1-s)/(s-1) + N^-s/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720 + ... + R_8
        tail = Nf ** (1 - s) / (s - 1) + Nf ** -s / 2 + s * Nf ** (-s - 1) / 12
        tail -= s * (s + 1) * (s + 2) * Nf ** (-s - 3) / 720
        tail += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * Nf ** (-s - 5) / 30240
        # remainder is at most twice the first omitted term
        err = 2 * math.prod(range(s, s + 7)) * Nf ** (-s - 7) / 1209600
        return head + tail, err
