"""Shared fixtures and independent oracles.

The oracles here avoid every code path of the package under test.
"""
from __future__ import annotations

import cmath
import math
import sys
from fractions import Fraction

import pytest

from cohen_moments import build_sieve


def eta_zeta(s: complex, n: int = 60) -> complex:
    """ζ(s) = η(s) / (1 - 2^{1-s}) with Borwein's accelerated alternating series."""
    # d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    d, acc = [], Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(float(n * acc))
    eta = 0j
    for k in range(n):
        eta += (-1) ** k * (d[k] - d[n]) * cmath.exp(-s * math.log(k + 1))
    eta = -eta / d[n]
    return eta / (1 - cmath.exp((1 - s) * math.log(2)))


def brute_gcd_beta(h: int, m: int, beta: int) -> bool:
    d = 2
    while d**beta <= max(m, 1):
        if h % d**beta == 0 and m % d**beta == 0:
            return False
        d += 1
    return True


def brute_cohen(q: int, beta: int, n: int) -> int:
    """Exact c_{q,β}(n) by counting admissible h in each residue class of nh mod q^β.

    Σ e^{2πi nh/m} over admissible h is an integer; evaluated here with
    cmath and rounded, independent of the package's FFT and identity paths.
    """
    m = q**beta
    total = sum(cmath.exp(2j * math.pi * ((n * h) % m) / m) for h in range(m) if brute_gcd_beta(h, m, beta))
    return round(total.real)


def brute_mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def brute_phi(n: int) -> int:
    return sum(1 for h in range(1, n + 1) if math.gcd(h, n) == 1)


def frac_sawtooth(t: Fraction) -> Fraction:
    return t - math.floor(t) - Fraction(1, 2)


@pytest.fixture(scope="session")
def sieve_1e4():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def sieve_1e5():
    return build_sieve(10**5)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
