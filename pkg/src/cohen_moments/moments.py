"""Exact moments C_{k,β}(x, y) = Σ_{n≤y} (Σ_{q≤x} c_{q,β}(n))^k and their asymptotics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from .arith import SieveTables, sawtooth
from .config import EXACT_MAX, check_exact
from .errors import DomainError, ExactOverflowError, ResourceLimitError
from .ramanujan import CohenQuery, cohen_sum_identity, row_table
from .zeta import zeta

__all__ = [
    "AsymptoticReport",
    "BRUTE_SCALE",
    "MomentQuery",
    "appendix_decomposition",
    "appendix_decomposition_exact",
    "error_bound_first",
    "error_bound_prop1",
    "error_bound_second",
    "exact_power_sum",
    "in_theorem_range",
    "main_term_first",
    "main_term_prop1",
    "main_term_second",
    "make_report",
    "moment_brute",
    "moment_exact",
    "moment_report",
    "mobius_weighted_sum",
]

Real = Union[int, float, Fraction]
ZetaFn = Callable[[complex], complex]

BRUTE_SCALE = 10**6


def _floor(y: Real) -> int:
    return math.floor(y)


@dataclass(frozen=True)
class MomentQuery:
    k: int
    beta: int
    x: int
    y: Real

    def __post_init__(self) -> None:
        if self.k < 1 or self.beta < 1 or self.x < 1:
            raise DomainError(f"need k, beta, x >= 1; got {self.k}, {self.beta}, {self.x}")
        if not self.y >= 1:
            raise DomainError(f"need y >= 1, got {self.y}")

    @property
    def n_max(self) -> int:
        return _floor(self.y)


@dataclass(frozen=True)
class AsymptoticReport:
    exact: int | float | complex
    main_term: float | complex
    error: float | complex
    bound_shape: float
    normalized_error: float


def make_report(exact, main_term, bound_shape: float) -> AsymptoticReport:
    if not bound_shape > 0:
        raise DomainError(f"bound shape must be positive, got {bound_shape}")
    error = exact - main_term
    return AsymptoticReport(exact, main_term, error, bound_shape, abs(error) / bound_shape)


def _real_zeta(zeta_fn: ZetaFn, s: float) -> float:
    return complex(zeta_fn(s)).real


# ---------------------------------------------------------------- exact sums


def exact_power_sum(values: np.ndarray, k: int, what: str = "moment") -> int:
    """Σ v^k over an integer array, exact, inside the 128-bit width.

    int64 chunks are used whenever chunk_len * max|v|^k cannot wrap; otherwise
    Python integers take over.
    """
    if values.size == 0:
        return 0
    if values.dtype == object:
        peak = max(abs(int(v)) for v in values)
    else:
        peak = int(np.max(np.abs(values)))
    top = peak**k
    if top > EXACT_MAX:
        mags = np.array([abs(int(v)) for v in values], dtype=object)
        first = next(i for i, v in enumerate(mags) if v**k > EXACT_MAX)
        raise ExactOverflowError(
            f"{what}: |S(n)|^{k} exceeds the exact width first at n = {first + 1} "
            f"(|S| = {mags[first]})"
        )
    total = 0
    if values.dtype != object and top < 2**62:
        chunk = max(1, (2**62) // max(top, 1))
        v64 = values.astype(np.int64)
        for start in range(0, v64.size, chunk):
            part = v64[start : start + chunk]
            total += int(np.sum(part**k, dtype=np.int64))
            if abs(total) > EXACT_MAX:
                raise ExactOverflowError(
                    f"{what}: running sum leaves the exact width by n = {start + part.size}"
                )
    else:
        for i, v in enumerate(values):
            total += int(v) ** k
            if abs(total) > EXACT_MAX:
                raise ExactOverflowError(f"{what}: running sum leaves the exact width at n = {i + 1}")
    return check_exact(total, what)


def moment_exact(query: MomentQuery, tables: SieveTables) -> int:
    """C_{k,β}(x, y) from the Mertens row table, exact."""
    rows = row_table(query.beta, query.x, query.n_max, tables)
    return exact_power_sum(rows, query.k, f"C_{query.k},{query.beta}({query.x}, {query.y})")


def moment_brute(query: MomentQuery) -> int:
    """Independent oracle: the defining double loop with c_{q,β}(n) from the divisor identity."""
    if query.x * query.n_max > BRUTE_SCALE:
        raise ResourceLimitError(
            f"brute moment needs x*y = {query.x * query.n_max} <= {BRUTE_SCALE}"
        )
    total = 0
    for n in range(1, query.n_max + 1):
        row = 0
        for q in range(1, query.x + 1):
            row += cohen_sum_identity(CohenQuery(q, query.beta, n))
        total += row**query.k
    return check_exact(total, "brute moment")


def mobius_weighted_sum(beta: int, x: int, tables: SieveTables) -> int:
    """Σ_{dk≤x} d^β μ(k) = Σ_{d≤x} d^β M(x/d)."""
    if x > tables.limit:
        raise DomainError(f"x = {x} exceeds sieve limit {tables.limit}")
    mert = tables.mertens
    return sum(d**beta * int(mert[x // d]) for d in range(1, x + 1))


# ---------------------------------------------------------------- main terms


def main_term_prop1(query: MomentQuery, zeta_fn: ZetaFn = zeta) -> float:
    if query.k == 1:
        return float(query.y)
    b = query.beta
    return float(query.y) * query.x ** (1 + b) / ((1 + b) * _real_zeta(zeta_fn, 1 + b))


def main_term_first(beta: int, x: int, y: Real, zeta_fn: ZetaFn = zeta) -> float:
    if beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    if beta >= 3:
        return float(y)
    return float(y) - x ** (1 + beta) / (2 * (1 + beta) * _real_zeta(zeta_fn, 1 + beta))


def main_term_second(beta: int, x: int, y: Real, zeta_fn: ZetaFn = zeta) -> float:
    if beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    z = _real_zeta(zeta_fn, 1 + beta)
    lead = float(y) * x ** (1 + beta) / ((1 + beta) * z)
    if beta >= 3:
        return lead
    return lead - 0.5 * x ** (2 + 2 * beta) / ((1 + beta) ** 2 * z * z)


# ---------------------------------------------------------------- bound shapes
# implied constants are taken to be 1


def error_bound_first(beta: int, x: Real, y: Real) -> float:
    if not y > math.e:
        raise DomainError(f"first-moment bound needs y > e, got {y}")
    x, y = float(x), float(y)
    ly = math.log(y)
    lead = x**beta * y ** (1 / 3) * ly**4
    if beta >= 3:
        return lead
    return lead + x ** (2 * beta + 1) * y ** (-2 / 3) + x ** (beta + 1) * y ** (-1 / 3)


def error_bound_second(beta: int, x: Real, y: Real) -> float:
    if not (x > math.e and y > math.e**math.e):
        raise DomainError(f"second-moment bound needs x > e and y > e^e; got x={x}, y={y}")
    x, y = float(x), float(y)
    lx, ly = math.log(x), math.log(y)
    llx, lly = math.log(lx), math.log(ly)
    out = x ** (2 * beta) * y ** (1 / 3 + 1 / (6 * beta)) * ly**5 * lly * (lx**4 + llx**4)
    out += y * x ** (0.5 + beta) * (lx**3 + llx**3)
    if beta <= 2:
        out += x ** (2 + 4 * beta) / y + x ** (2 * beta + 1) * (lx + llx)
    return out


def error_bound_prop1(k: int, beta: int, x: Real, y: Real) -> float:
    if not x > 1:
        raise DomainError(f"prop1 bound needs x > 1 (log x > 0), got {x}")
    x = float(x)
    lx = math.log(x)
    out = x ** (k * (1 + beta)) * lx**k
    if k > 1:
        # floor(1/β) is 0 for β >= 2, so the log factor drops out
        out += float(y) * x**beta * lx ** (1 // beta)
    return out


def in_theorem_range(theorem: str, beta: int, x: Real, y: Real, k: int = 1) -> bool:
    """Whether (β, x, y) satisfies the hypothesis range of the named result."""
    x, y = float(x), float(y)
    if theorem == "prop1":
        return x > 1 and y > x ** (k * (1 + beta)) * math.log(x) ** (k + 1)
    if theorem == "thm2":
        return x > 1 and y >= x ** (1.5 * beta) * math.log(x) ** 5
    if theorem == "thm3":
        if beta <= 2:
            if not x > 1:
                return False
            upper = x ** (2 * beta + beta * beta) * math.log(x) ** (2.5 * (beta + 1))
            return x ** (2 * beta) < y < upper
        return y > x ** (1.5 * beta)
    if theorem == "thm4":
        return x > 1
    if theorem == "thm5":
        return x > math.e
    raise DomainError(f"unknown theorem {theorem!r}")


def moment_report(
    target: str, query: MomentQuery, tables: SieveTables, zeta_fn: ZetaFn = zeta
) -> AsymptoticReport:
    """Exact moment against the main term and bound shape of ``target``."""
    b, x, y = query.beta, query.x, query.y
    if target == "thm2":
        if query.k != 1:
            raise DomainError("thm2 concerns the first moment (k = 1)")
        main = main_term_first(b, x, y, zeta_fn)
        bound = error_bound_first(b, x, y)
    elif target == "thm3":
        if query.k != 2:
            raise DomainError("thm3 concerns the second moment (k = 2)")
        main = main_term_second(b, x, y, zeta_fn)
        bound = error_bound_second(b, x, y)
    elif target == "prop1":
        main = main_term_prop1(query, zeta_fn)
        bound = error_bound_prop1(query.k, b, x, y)
    else:
        raise DomainError(f"unknown moment target {target!r}")
    return make_report(moment_exact(query, tables), main, bound)


# ---------------------------------------------------------------- decomposition


def appendix_decomposition(
    beta: int, x: int, y: float, tables: SieveTables
) -> tuple[float, float, float]:
    """Floating (C1, C2, C3) with C1 + C2 + C3 = C_{1,β}(x, y).

    C1 = y Σ_{dk≤x} μ(k), C2 = -1/2 Σ_{dk≤x} d^β μ(k),
    C3 = -Σ_{dk≤x} d^β μ(k) ψ(y/d^β).
    """
    if x < 1 or x > tables.limit:
        raise DomainError(f"x = {x} outside [1, {tables.limit}]")
    mert = tables.mertens
    yf = float(y)
    mu_sum = 0
    c2 = 0.0
    c3 = 0.0
    for d in range(1, x + 1):
        m = int(mert[x // d])
        if m == 0:
            continue
        dp = d**beta
        mu_sum += m
        c2 -= 0.5 * dp * m
        c3 -= dp * m * sawtooth(yf / dp)
    return yf * mu_sum, c2, c3


def appendix_decomposition_exact(
    beta: int, x: int, y: int | Fraction, tables: SieveTables
) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (C1, C2, C3) for rational y.

    Uses 2 d^β ψ(y/d^β) = 2 (y mod d^β) - d^β, so every component is a
    half-integer multiple of the rational unit of y.
    """
    if x < 1 or x > tables.limit:
        raise DomainError(f"x = {x} outside [1, {tables.limit}]")
    y = Fraction(y)
    mert = tables.mertens
    mu_sum = 0
    twice_c2 = 0
    twice_c3 = Fraction(0)
    for d in range(1, x + 1):
        m = int(mert[x // d])
        if m == 0:
            continue
        dp = d**beta
        mu_sum += m
        twice_c2 -= dp * m
        twice_c3 -= m * (2 * (y % dp) - dp)
    return y * mu_sum, Fraction(twice_c2, 2), twice_c3 / 2
