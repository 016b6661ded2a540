"""Cohen's generalized Ramanujan sums c_{q,β}(n) and their row sums over q ≤ x.

Two independent evaluations are provided: a direct exponential sum over the
admissible residues h mod q^β, and the exact divisor identity

    c_{q,β}(n) = Σ_{d | q, d^β | n} d^β μ(q/d).

The row sum S_β(x, n) = Σ_{q≤x} c_{q,β}(n) is evaluated through the Mertens
function, Σ_{d ≤ x, d^β | n} d^β M(x/d).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import SieveTables, divisors, mobius, trial_factor
from .config import check_entries, check_exact
from .errors import DomainError, NumericIntegrityError, ResourceLimitError

__all__ = [
    "CohenQuery",
    "DIRECT_CAP",
    "admissible_mask",
    "beta_root_part",
    "cohen_sum_direct",
    "cohen_sum_identity",
    "cohen_sums_direct",
    "gcd_beta_coprime",
    "iroot",
    "row_sum",
    "row_table",
]

# q^β must not exceed this for the O(q^β) exponential-sum evaluation
DIRECT_CAP = 2**22
ROUND_TOL = 1e-6
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CohenQuery:
    q: int
    beta: int
    n: int

    def __post_init__(self) -> None:
        if self.q < 1 or self.beta < 1:
            raise DomainError(f"need q >= 1 and beta >= 1, got q={self.q}, beta={self.beta}")
        if self.n < 1:
            raise DomainError(f"need n >= 1, got n={self.n}")
        check_exact(self.q**self.beta, "q^beta")

    @property
    def modulus(self) -> int:
        return self.q**self.beta


def iroot(y: int, k: int) -> int:
    """floor(y ** (1/k)) for non-negative integers, exactly."""
    if y < 0 or k < 1:
        raise DomainError(f"iroot({y}, {k}) undefined")
    if k == 1 or y < 2:
        return y
    r = int(round(y ** (1.0 / k)))
    while r**k > y:
        r -= 1
    while (r + 1) ** k <= y:
        r += 1
    return r


def _has_beta_power_divisor(g: int, beta: int) -> bool:
    return any(e >= beta for _, e in trial_factor(g))


def gcd_beta_coprime(h: int, m: int, beta: int) -> bool:
    """True iff no d >= 2 has d^β dividing both h and m."""
    if m < 1 or beta < 1 or not 0 <= h < m:
        raise DomainError(f"gcd_beta_coprime needs 0 <= h < m, beta >= 1; got {h}, {m}, {beta}")
    # d^β | h and d^β | m  <=>  d^β | gcd(h, m); gcd(0, m) = m
    g = math.gcd(h, m)
    if g == 1:
        return True
    return not _has_beta_power_divisor(g, beta)


def admissible_mask(m: int, beta: int) -> np.ndarray:
    """Boolean mask over h = 0..m-1 of residues β-power-coprime to m."""
    mask = np.ones(m, dtype=bool)
    for p, e in trial_factor(m) if m > 1 else ():
        if e >= beta:
            mask[:: p**beta] = False
    return mask


def _check_direct(q: int, beta: int, cap: int | None) -> int:
    m = q**beta
    limit = DIRECT_CAP if cap is None else cap
    if m > limit:
        raise ResourceLimitError(f"direct method needs q^beta = {m} terms, cap is {limit}")
    check_entries(m, "direct residue table")
    return m


def _round_checked(re: float, im: float, what: str) -> int:
    val = round(re)
    resid = abs(re - val)
    if resid >= ROUND_TOL or abs(im) >= ROUND_TOL:
        raise NumericIntegrityError(
            f"{what}: sum {re}+{im}i is not an integer within {ROUND_TOL}"
        )
    return int(val)


def cohen_sum_direct(query: CohenQuery, cap: int | None = None) -> int:
    """Sum e^{2πinh/q^β} over admissible h and round to the nearest integer."""
    q, beta, n = query.q, query.beta, query.n
    m = _check_direct(q, beta, cap)
    h = np.flatnonzero(admissible_mask(m, beta)).astype(np.int64)
    # reduce the phase exactly in integers before scaling to an angle
    phase = ((n % m) * h) % m
    ang = (2.0 * np.pi / m) * phase
    re = float(np.cos(ang).sum())
    im = float(np.sin(ang).sum())
    return _round_checked(re, im, f"c_({q},{beta})({n})")


def cohen_sums_direct(q: int, beta: int, n_max: int, cap: int | None = None) -> np.ndarray:
    """c_{q,β}(n) for n = 1..n_max from one DFT of the admissible-residue indicator.

    Entry ``i`` holds the value at ``n = i + 1``. This is the same exponential
    sum as :func:`cohen_sum_direct`, batched over n.
    """
    if q < 1 or beta < 1 or n_max < 1:
        raise DomainError(f"need q, beta, n_max >= 1; got {q}, {beta}, {n_max}")
    m = _check_direct(q, beta, cap)
    spectrum = np.fft.fft(admissible_mask(m, beta).astype(np.float64))
    # Σ_h e^{+2πinh/m} is the conjugate of the forward transform at n mod m
    vals = np.conj(spectrum[np.arange(1, n_max + 1) % m])
    out = np.rint(vals.real)
    worst_re = float(np.max(np.abs(vals.real - out)))
    worst_im = float(np.max(np.abs(vals.imag)))
    if worst_re >= ROUND_TOL or worst_im >= ROUND_TOL:
        raise NumericIntegrityError(
            f"c_({q},{beta}) batch: residual {worst_re:.3g}, imaginary part {worst_im:.3g}"
        )
    return out.astype(np.int64)


def cohen_sum_identity(query: CohenQuery) -> int:
    """Exact c_{q,β}(n) from the divisor/Möbius identity."""
    q, beta, n = query.q, query.beta, query.n
    total = 0
    for d in divisors(q):
        dp = d**beta
        if n % dp == 0:
            total += dp * mobius(q // d)
    return check_exact(total, f"c_({q},{beta})({n})")


def beta_root_part(n: int, beta: int) -> int:
    """Largest r with r^β | n; then d^β | n exactly when d | r."""
    r = 1
    for p, e in trial_factor(n) if n > 1 else ():
        r *= p ** (e // beta)
    return r


def row_sum(beta: int, n: int, x: int, tables: SieveTables) -> int:
    """Σ_{q≤x} c_{q,β}(n) via Σ_{d≤x, d^β|n} d^β M(x/d)."""
    if beta < 1 or n < 1 or x < 1:
        raise DomainError(f"row_sum needs beta, n, x >= 1; got {beta}, {n}, {x}")
    if x > tables.limit:
        raise DomainError(f"x = {x} exceeds sieve limit {tables.limit}")
    mert = tables.mertens
    total = 0
    for d in divisors(beta_root_part(n, beta)):
        if d > x:
            break
        total += d**beta * int(mert[x // d])
    return check_exact(total, f"S_{beta}({x}, {n})")


def row_table(beta: int, x: int, y: int, tables: SieveTables) -> np.ndarray:
    """Row sums S_β(x, n) for n = 1..y (entry ``i`` is n = i + 1).

    Each d ≤ min(x, y^{1/β}) adds d^β M(x/d) to every multiple of d^β.
    """
    if beta < 1 or x < 1 or y < 1:
        raise DomainError(f"row_table needs beta, x, y >= 1; got {beta}, {x}, {y}")
    if x > tables.limit:
        raise DomainError(f"x = {x} exceeds sieve limit {tables.limit}")
    check_entries(y, "row table")
    mert = tables.mertens
    dmax = min(x, iroot(y, beta))
    weights = [(d**beta, d**beta * int(mert[x // d])) for d in range(1, dmax + 1)]
    bound = sum(abs(w) for _, w in weights)
    dtype = np.int64 if bound < _INT64_SAFE else object
    out = np.zeros(y, dtype=dtype)
    for step, w in weights:
        if w:
            out[step - 1 :: step] += w
    if dtype is object:
        for i, v in enumerate(out):
            check_exact(int(v), f"S_{beta}({x}, {i + 1})")
    return out
