"""Generalized divisor functions σ_{z,β}(n) = Σ_{d^β | n} d^{βz}."""
from __future__ import annotations

import numpy as np

from .arith import divisors
from .config import check_entries
from .errors import DomainError
from .ramanujan import beta_root_part, iroot

__all__ = ["power_weights", "sigma_pair_table", "sigma_table", "sigma_z_beta"]

_BLOCK = 4096


def _is_real(z: complex) -> bool:
    return complex(z).imag == 0.0


def power_weights(dmax: int, z: complex, beta: int) -> np.ndarray:
    """d^{βz} = exp(βz log d) for d = 1..dmax (entry ``i`` is d = i + 1).

    Weights are evaluated over a fixed block layout so each d gets a
    bit-identical value whatever dmax is.
    """
    z = complex(z)
    padded = -(-dmax // _BLOCK) * _BLOCK
    logd = np.log(np.arange(1, padded + 1, dtype=np.float64))
    if _is_real(z):
        expo = beta * z.real * logd
    else:
        expo = (beta * z) * logd
    out = np.empty_like(expo)
    for start in range(0, padded, _BLOCK):
        out[start : start + _BLOCK] = np.exp(expo[start : start + _BLOCK])
    return out[:dmax]


def sigma_z_beta(n: int, z: complex, beta: int) -> complex:
    """Pointwise σ_{z,β}(n), summed over ascending d."""
    if n < 1 or beta < 1:
        raise DomainError(f"sigma needs n >= 1 and beta >= 1; got {n}, {beta}")
    ds = np.array(divisors(beta_root_part(n, beta)), dtype=np.float64)
    z = complex(z)
    expo = beta * z * np.log(ds)
    total = 0j
    for term in np.exp(expo):
        total += term
    return total


def sigma_table(y: int, z: complex, beta: int) -> np.ndarray:
    """σ_{z,β}(n) for n = 1..y by an additive sieve over d.

    Real z gives a float64 array, complex z a complex128 array. Each entry
    accumulates its terms in ascending d.
    """
    if y < 1 or beta < 1:
        raise DomainError(f"sigma_table needs y >= 1 and beta >= 1; got {y}, {beta}")
    check_entries(y, "sigma table")
    dmax = iroot(y, beta)
    w = power_weights(dmax, z, beta)
    out = np.zeros(y, dtype=w.dtype)
    # d^β > y/2 has exactly one multiple in range; those d come last, so a
    # single vectorized add keeps the per-entry ascending-d order
    split = iroot(y // 2, beta) if y >= 2 else 0
    for d in range(1, split + 1):
        step = d**beta
        out[step - 1 :: step] += w[d - 1]
    if split < dmax:
        tail = np.arange(split + 1, dmax + 1, dtype=np.int64)
        out[tail**beta - 1] += w[split:dmax]
    return out


def sigma_pair_table(y: int, z1: complex, z2: complex, beta: int) -> np.ndarray:
    """Pointwise product σ_{z1,β}(n) σ_{z2,β}(n) for n = 1..y."""
    check_entries(2 * y, "sigma pair tables")
    return sigma_table(y, z1, beta) * sigma_table(y, z2, beta)
