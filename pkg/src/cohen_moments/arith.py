"""Elementary arithmetic functions and the Möbius/Mertens sieve."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import check_entries
from .errors import DomainError

__all__ = [
    "Factorization",
    "SieveTables",
    "build_sieve",
    "divisors",
    "euler_phi",
    "factorize",
    "mobius",
    "phi_s",
    "sawtooth",
    "trial_factor",
]


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True, eq=False)
class SieveTables:
    """Read-only tables indexed directly by n (slot 0 is unused).

    ``mobius[n]``, ``mertens[n]`` and ``smallest_prime_factor[n]`` are valid
    for ``1 <= n <= limit``; ``mertens[0] == 0`` so that ``mertens[x // d]``
    works for every ``d``.
    """

    limit: int
    mobius: np.ndarray
    mertens: np.ndarray
    smallest_prime_factor: np.ndarray

    def mertens_at(self, x: int) -> int:
        if x < 0 or x > self.limit:
            raise DomainError(f"mertens({x}) outside sieve limit {self.limit}")
        return int(self.mertens[x])


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def build_sieve(limit: int) -> SieveTables:
    """Sieve smallest prime factors, μ and the Mertens function up to ``limit``."""
    if limit < 1:
        raise DomainError(f"sieve limit must be >= 1, got {limit}")
    check_entries(limit + 1, "sieve")

    spf = np.zeros(limit + 1, dtype=np.int64)
    root = math.isqrt(limit)
    for p in range(2, root + 1):
        if spf[p] == 0:
            tail = spf[p * p :: p]
            tail[tail == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unmarked = spf == 0
    spf[unmarked] = idx[unmarked]
    spf[0] = 0
    spf[1] = 1

    # sign flips per small prime; a leftover cofactor > sqrt(limit) is one more prime
    mu = np.ones(limit + 1, dtype=np.int64)
    rad = np.ones(limit + 1, dtype=np.int64)
    for p in range(2, root + 1):
        if spf[p] != p:
            continue
        mu[p::p] *= -1
        rad[p::p] *= p
        mu[p * p :: p * p] = 0
    big = rad != idx
    big[0] = False
    mu[big] *= -1
    mu[0] = 0
    mu = mu.astype(np.int8)

    mertens = np.cumsum(mu, dtype=np.int64)
    return SieveTables(
        limit=limit,
        mobius=_readonly(mu),
        mertens=_readonly(mertens),
        smallest_prime_factor=_readonly(spf),
    )


def factorize(n: int, tables: SieveTables) -> Factorization:
    """Factor ``n`` by walking the smallest-prime-factor chain."""
    if n < 1 or n > tables.limit:
        raise DomainError(f"{n} outside sieve range [1, {tables.limit}]")
    spf = tables.smallest_prime_factor
    out: list[tuple[int, int]] = []
    m = n
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return Factorization(n, tuple(out))


@lru_cache(maxsize=65536)
def trial_factor(n: int) -> tuple[tuple[int, int], ...]:
    """Factor a moderate ``n`` by trial division; cached for the scalar helpers."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=65536)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in trial_factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    fac = trial_factor(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    out = n
    for p, _ in trial_factor(n):
        out = out // p * (p - 1)
    return out


def phi_s(n: int, s: complex) -> complex:
    """n^s times the product of (1 - p^-s) over the distinct primes p of n."""
    if n < 1:
        raise DomainError(f"phi_s needs n >= 1, got {n}")
    if n == 1:
        return complex(1.0)
    s = complex(s)
    val = complex(n) ** s
    for p, _ in trial_factor(n):
        val *= 1 - complex(p) ** (-s)
    return val


def sawtooth(t: float) -> float:
    """t - floor(t) - 1/2, so integers map to -1/2."""
    return t - math.floor(t) - 0.5
