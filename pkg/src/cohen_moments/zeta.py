"""Riemann zeta by Euler–Maclaurin summation, with exact Bernoulli numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "BERNOULLI_MAX",
    "ZetaConfig",
    "bernoulli",
    "bernoulli_fraction",
    "zeta",
]

BERNOULLI_MAX = 60
POLE_GUARD = 1e-9
_MAX_TERMS = 1 << 20


@lru_cache(maxsize=1)
def _bernoulli_table() -> tuple[Fraction, ...]:
    # Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, with B_1 = -1/2
    table = [Fraction(1)]
    for m in range(1, BERNOULLI_MAX + 1):
        acc = sum((math.comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_fraction(index: int) -> Fraction:
    if index < 2 or index % 2 or index > BERNOULLI_MAX:
        raise DomainError(f"Bernoulli index must be even in [2, {BERNOULLI_MAX}], got {index}")
    return _bernoulli_table()[index]


def bernoulli(index: int) -> float:
    return float(bernoulli_fraction(index))


@dataclass(frozen=True)
class ZetaConfig:
    """Euler–Maclaurin controls.

    ``series_terms=None`` picks max(30, ceil(2|Im s|)) per argument. The cutoff
    is doubled while the first omitted correction exceeds ``target_abs_error``.
    """

    series_terms: int | None = None
    correction_terms: int = 12
    target_abs_error: float = 1e-12

    def __post_init__(self) -> None:
        if self.series_terms is not None and self.series_terms < 10:
            raise DomainError(f"series_terms must be >= 10, got {self.series_terms}")
        m = self.correction_terms
        if m < 2 or m % 2 or 2 * m + 2 > BERNOULLI_MAX:
            raise DomainError(f"correction_terms must be even in [2, {BERNOULLI_MAX // 2 - 1}], got {m}")
        if not self.target_abs_error > 0:
            raise DomainError("target_abs_error must be positive")

    def cutoff(self, s: complex) -> int:
        if self.series_terms is not None:
            return self.series_terms
        return max(30, math.ceil(2 * abs(s.imag)))


DEFAULT_CONFIG = ZetaConfig()


@lru_cache(maxsize=1)
def _em_coefficients() -> tuple[float, ...]:
    # B_{2k} / (2k)! for k = 1..BERNOULLI_MAX/2
    return tuple(
        float(bernoulli_fraction(2 * k) / math.factorial(2 * k))
        for k in range(1, BERNOULLI_MAX // 2 + 1)
    )


def _tail_estimate(s: complex, n: int, m: int) -> float:
    """Size of the first omitted Euler–Maclaurin correction."""
    coef = abs(_em_coefficients()[m])
    rising = 1.0
    for j in range(2 * m + 1):
        rising *= abs(s + j)
    return coef * rising * float(n) ** (-(s.real + 2 * m + 1))


def zeta(s: complex, config: ZetaConfig | None = None) -> complex:
    """ζ(s) for complex s away from the pole at 1."""
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"zeta argument must be finite, got {s}")
    if abs(s - 1) < POLE_GUARD:
        raise DomainError(f"zeta has a pole at s = 1; got {s}")
    cfg = config or DEFAULT_CONFIG
    m = cfg.correction_terms
    n = cfg.cutoff(s)
    while _tail_estimate(s, n, m) > cfg.target_abs_error and n < _MAX_TERMS:
        n *= 2

    head = 0j
    for k in range(1, n):
        head += k ** (-s)
    npow = n ** (-s)
    total = head + n * npow / (s - 1) + 0.5 * npow
    coefs = _em_coefficients()
    rising = s
    nk = npow / n
    for k in range(1, m + 1):
        # rising = s(s+1)...(s+2k-2), nk = N^{-s-2k+1}
        total += coefs[k - 1] * rising * nk
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        nk /= n * n
    return total
