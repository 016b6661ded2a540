"""Truncation checks of absolutely convergent Dirichlet-series identities.

Each check sums the series to a cutoff in ascending order and reports the
distance to the closed form. Only arguments at least ``MARGIN`` inside the
half-plane of absolute convergence are accepted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .arith import SieveTables, divisors, phi_s
from .divisor import sigma_table, sigma_z_beta
from .errors import DomainError
from .ramanujan import beta_root_part
from .zeta import zeta

__all__ = [
    "MARGIN",
    "SeriesCheck",
    "cohen_coefficients",
    "verify_cohen_series",
    "verify_crum_pair",
    "verify_crum_single",
    "verify_phi_series",
]

ZetaFn = Callable[[complex], complex]
MARGIN = 0.5


@dataclass(frozen=True)
class SeriesCheck:
    truncation: int
    s: complex
    partial: complex
    reference: complex
    residual: float


def _check(truncation: int, s: complex, partial: complex, reference: complex) -> SeriesCheck:
    return SeriesCheck(truncation, s, partial, reference, abs(partial - reference))


def _ascending_sum(terms: np.ndarray) -> complex:
    return complex(np.cumsum(terms)[-1])


def _need_table(limit: int, tables: SieveTables) -> None:
    if limit > tables.limit:
        raise DomainError(f"truncation {limit} exceeds sieve limit {tables.limit}")


def cohen_coefficients(n: int, beta: int, Q: int, tables: SieveTables) -> np.ndarray:
    """c_{q,β}(n) for q = 1..Q, by spreading d^β μ(k) over q = dk."""
    _need_table(Q, tables)
    mu = tables.mobius
    out = np.zeros(Q, dtype=np.int64)
    for d in divisors(beta_root_part(n, beta)):
        if d > Q:
            break
        out[d - 1 :: d] += d**beta * mu[1 : Q // d + 1].astype(np.int64)
    return out


def verify_cohen_series(
    n: int, beta: int, s: complex, Q: int, tables: SieveTables, zeta_fn: ZetaFn = zeta
) -> SeriesCheck:
    """Σ_{q≤Q} c_{q,β}(n) q^{-βs} against σ_{1-s,β}(n) / ζ(βs)."""
    s = complex(s)
    if n < 1 or beta < 1 or Q < 1:
        raise DomainError(f"need n, beta, Q >= 1; got {n}, {beta}, {Q}")
    if s.real < 1 + MARGIN:
        raise DomainError(f"Cohen series check needs Re(s) >= {1 + MARGIN}, got {s}")
    coef = cohen_coefficients(n, beta, Q, tables)
    q = np.arange(1, Q + 1, dtype=np.float64)
    partial = _ascending_sum(coef * np.exp(-beta * s * np.log(q)))
    reference = sigma_z_beta(n, 1 - s, beta) / complex(zeta_fn(beta * s))
    return _check(Q, s, partial, reference)


def _dirichlet_sum(values: np.ndarray, s: complex) -> complex:
    logn = np.log(np.arange(1, values.size + 1, dtype=np.float64))
    return _ascending_sum(values * np.exp(-s * logn))


def verify_crum_single(
    z: complex, beta: int, s: complex, N: int, zeta_fn: ZetaFn = zeta
) -> SeriesCheck:
    """Σ_{n≤N} σ_{z,β}(n) n^{-s} against ζ(s) ζ(β(s - z))."""
    z, s = complex(z), complex(s)
    abscissa = max(z.real + 1 / beta, 1.0)
    if s.real < abscissa + MARGIN:
        raise DomainError(f"need Re(s) >= {abscissa + MARGIN}, got {s}")
    partial = _dirichlet_sum(sigma_table(N, z, beta), s)
    reference = complex(zeta_fn(s)) * complex(zeta_fn(beta * (s - z)))
    return _check(N, s, partial, reference)


def crum_pair_closed_form(z1: complex, z2: complex, beta: int, s: complex, zeta_fn: ZetaFn = zeta) -> complex:
    """ζ(s) ζ(β(s-z1)) ζ(β(s-z2)) ζ(β(s-z1-z2)) / ζ(β(2s-z1-z2))."""
    zf = lambda w: complex(zeta_fn(w))  # noqa: E731
    num = zf(s) * zf(beta * (s - z1)) * zf(beta * (s - z2)) * zf(beta * (s - z1 - z2))
    return num / zf(beta * (2 * s - z1 - z2))


def verify_crum_pair(
    z1: complex, z2: complex, beta: int, s: complex, N: int, zeta_fn: ZetaFn = zeta
) -> SeriesCheck:
    """Σ_{n≤N} σ_{z1,β}(n) σ_{z2,β}(n) n^{-s} against the four-zeta quotient."""
    z1, z2, s = complex(z1), complex(z2), complex(s)
    abscissa = max(1.0, z1.real + 1 / beta, z2.real + 1 / beta, (z1 + z2).real + 1 / beta)
    if s.real < abscissa + MARGIN:
        raise DomainError(f"need Re(s) >= {abscissa + MARGIN}, got {s}")
    values = sigma_table(N, z1, beta) * sigma_table(N, z2, beta)
    partial = _dirichlet_sum(values, s)
    return _check(N, s, partial, crum_pair_closed_form(z1, z2, beta, s, zeta_fn))


def _phi_table(Q: int, s: float, tables: SieveTables) -> np.ndarray:
    """φ_s(q) for q = 1..Q via the prime sieve."""
    q = np.arange(1, Q + 1, dtype=np.float64)
    out = q**s
    spf = tables.smallest_prime_factor
    primes = np.flatnonzero(spf[: Q + 1] == np.arange(Q + 1))
    for p in primes[primes >= 2]:
        out[p - 1 :: p] *= 1.0 - float(p) ** (-s)
    return out


def verify_phi_series(
    n: int, s_real: float, Q: int, tables: SieveTables, zeta_fn: ZetaFn = zeta
) -> SeriesCheck:
    """Σ_{q≤Q} μ(q) c_q(n) / φ_{s+1}(q) against ζ(s+1) φ_s(n) / n^s."""
    s = float(s_real)
    if n < 1 or Q < 1:
        raise DomainError(f"need n, Q >= 1; got {n}, {Q}")
    if s < 2 * MARGIN:
        raise DomainError(f"phi series check needs s >= {2 * MARGIN}, got {s}")
    _need_table(Q, tables)
    coef = cohen_coefficients(n, 1, Q, tables) * tables.mobius[1 : Q + 1].astype(np.int64)
    partial = _ascending_sum(coef / _phi_table(Q, s + 1, tables))
    reference = complex(zeta_fn(s + 1)) * phi_s(n, s) / float(n) ** s
    return _check(Q, complex(s), partial, reference)
