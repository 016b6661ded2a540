"""Primed partial sums of σ_{z,β} and σ_{z1,β}σ_{z2,β} against their residue main terms.

The primed sum halves the last term when x is an integer:

    Σ'_{n≤x} f(n) = Σ_{n≤x} f(n) - f(x)/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .moments import AsymptoticReport, make_report
from .divisor import sigma_pair_table, sigma_table
from .zeta import zeta

__all__ = [
    "INTEGRAL_TOL",
    "PartialSumQuery",
    "bound_sigma",
    "bound_sigma_pair",
    "delta_report",
    "is_integral",
    "main_term_sigma",
    "main_term_sigma_pair",
    "pair_case_lower_bound",
    "primed_sum",
    "sigma_pair_partial_exact",
    "sigma_partial_exact",
]

ZetaFn = Callable[[complex], complex]
INTEGRAL_TOL = 1e-9


def is_integral(x: float) -> bool:
    if isinstance(x, int):
        return True
    return abs(x - round(x)) < INTEGRAL_TOL


@dataclass(frozen=True)
class PartialSumQuery:
    x: float
    beta: int
    z1: complex
    z2: complex | None = None

    def __post_init__(self) -> None:
        if not self.x >= 1:
            raise DomainError(f"need x >= 1, got {self.x}")
        if self.beta < 1:
            raise DomainError(f"need beta >= 1, got {self.beta}")
        for z in (self.z1, self.z2):
            if z is not None and not (math.isfinite(complex(z).real) and math.isfinite(complex(z).imag)):
                raise DomainError(f"z must be finite, got {z}")

    @property
    def integral(self) -> bool:
        return is_integral(self.x)

    @property
    def n_max(self) -> int:
        return int(round(self.x)) if self.integral else math.floor(self.x)


def primed_sum(values: np.ndarray, integral: bool) -> complex:
    """Ascending-order sum of ``values`` with the last one halved if ``integral``.

    The head is always accumulated first, so Σ'(x) = Σ'(x - 1/2) + f(x)/2
    holds bit for bit at integer x.
    """
    if values.size == 0:
        return 0j
    head = complex(np.cumsum(values[:-1])[-1]) if values.size > 1 else 0j
    last = complex(values[-1])
    return head + (0.5 * last if integral else last)


def sigma_partial_exact(query: PartialSumQuery) -> complex:
    table = sigma_table(query.n_max, query.z1, query.beta)
    return primed_sum(table, query.integral)


def sigma_pair_partial_exact(query: PartialSumQuery) -> complex:
    if query.z2 is None:
        raise DomainError("pair sum needs z2")
    table = sigma_pair_table(query.n_max, query.z1, query.z2, query.beta)
    return primed_sum(table, query.integral)


# ---------------------------------------------------------------- main terms


def _z(zeta_fn: ZetaFn, s: complex) -> complex:
    return complex(zeta_fn(s))


def main_term_sigma(query: PartialSumQuery, zeta_fn: ZetaFn = zeta) -> complex:
    z = complex(query.z1)
    b = query.beta
    x = float(query.x)
    if z.real > 0:
        raise DomainError(f"main term is only provided for Re(z) <= 0, got {z}")
    if b == 1 and z == 0:
        raise DomainError("beta = 1, z = 0 is the classical divisor problem and is excluded")
    if b <= 2:
        lower = -2 / (3 * b * b)
        if not z.real > lower:
            raise DomainError(f"beta = {b} needs Re(z) > {lower:.6g}, got {z}")
        lead = _z(zeta_fn, b * (1 - z)) * x
        return lead + _z(zeta_fn, z + 1 / b) * x ** (z + 1 / b) / (1 + b * z)
    if not z.real > -1:
        raise DomainError(f"beta >= 3 needs Re(z) > -1, got {z}")
    return _z(zeta_fn, b * (1 - z)) * x


def pair_case_lower_bound(beta: int) -> float:
    """Lower limit on Re(z1), Re(z2), Re(z1+z2) for the four-term main term (β = 1, 2)."""
    # β = 1 follows the region used where the residues are summed; β = 2 agrees
    # with -1/(2(2β+1)) = -1/10
    return {1: -0.5, 2: -0.1}[beta]


def _check_pair(z1: complex, z2: complex, beta: int) -> None:
    if z1 == 0 or z2 == 0 or z1 == z2:
        raise DomainError(f"degenerate parameters z1={z1}, z2={z2}: poles are not simple")
    a1, a2 = z1.real, z2.real
    if a1 > 0 or a2 > 0:
        raise DomainError(f"need Re(z1), Re(z2) <= 0; got {z1}, {z2}")
    if not a1 + a2 > -1:
        raise DomainError(f"need Re(z1 + z2) > -1; got {z1 + z2}")
    if not abs(a1 - a2) < 1 / beta:
        raise DomainError(f"need |Re(z1 - z2)| < 1/beta; got {abs(a1 - a2)}")
    if beta <= 2:
        lower = pair_case_lower_bound(beta)
        if not min(a1, a2, a1 + a2) > lower:
            raise DomainError(
                f"beta = {beta} needs Re(z1), Re(z2), Re(z1+z2) > {lower}; got {z1}, {z2}"
            )


def main_term_sigma_pair(query: PartialSumQuery, zeta_fn: ZetaFn = zeta) -> complex:
    if query.z2 is None:
        raise DomainError("pair main term needs z2")
    z1, z2 = complex(query.z1), complex(query.z2)
    b = query.beta
    x = float(query.x)
    _check_pair(z1, z2, b)
    zf = lambda s: _z(zeta_fn, s)  # noqa: E731

    lead = zf(b * (1 - z1)) * zf(b * (1 - z2)) * zf(b * (1 - z1 - z2)) / zf(b * (2 - z1 - z2)) * x
    if b >= 3:
        return lead

    def single(u: complex, v: complex) -> complex:
        # residue at s = u + 1/β
        num = zf(u + 1 / b) * zf(1 + b * u - b * v) * zf(1 - b * v)
        return num / ((b * u + 1) * zf(2 + b * u - b * v)) * x ** (u + 1 / b)

    w = z1 + z2
    corner = zf(w + 1 / b) * zf(b * z2 + 1) * zf(b * z1 + 1)
    corner = corner / ((b * w + 1) * zf(2 + b * w)) * x ** (w + 1 / b)
    return lead + single(z1, z2) + single(z2, z1) + corner


# ---------------------------------------------------------------- error shapes


def bound_sigma(x: float) -> float:
    if not x > 1:
        raise DomainError(f"bound needs x > 1, got {x}")
    return x ** (1 / 3) * math.log(x) ** 2


def bound_sigma_pair(x: float, z1: complex, z2: complex, beta: int) -> float:
    if not x > math.e:
        raise DomainError(f"bound needs x > e, got {x}")
    a1, a2 = complex(z1).real, complex(z2).real
    lx = math.log(x)
    tail = lx**5 * math.log(lx)
    generic = x ** (1 / 3 + 1 / (6 * beta) + (a1 + a2) / 6)
    if beta <= 2:
        return generic * tail
    other = x ** (1 / (2 * beta) + (a1 + a2) / 2 + beta * abs(a1 - a2) / 3)
    return max(other, generic) * tail


def delta_report(kind: str, query: PartialSumQuery, zeta_fn: ZetaFn = zeta) -> AsymptoticReport:
    """Exact primed sum, main term D and the Δ bound shape for ``kind`` in {single, pair}."""
    x = float(query.x)
    if kind == "single":
        main = main_term_sigma(query, zeta_fn)
        bound = bound_sigma(x)
        exact = sigma_partial_exact(query)
    elif kind == "pair":
        main = main_term_sigma_pair(query, zeta_fn)
        bound = bound_sigma_pair(x, query.z1, query.z2, query.beta)
        exact = sigma_pair_partial_exact(query)
    else:
        raise DomainError(f"kind must be 'single' or 'pair', got {kind!r}")
    return make_report(exact, main, bound)
