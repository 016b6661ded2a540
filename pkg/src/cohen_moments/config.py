"""Process-wide limits.

The table memory cap is read from ``COHEN_MOMENTS_MEM_CAP`` at call time so
tests and the CLI can override it without reimporting.
"""
from __future__ import annotations

import os

from .errors import ExactOverflowError, ResourceLimitError

DEFAULT_MEM_CAP = 2**27
MEM_CAP_ENV = "COHEN_MOMENTS_MEM_CAP"

# exact integers are kept inside a signed 128-bit range
EXACT_BITS = 127
EXACT_MAX = 2**EXACT_BITS - 1


def mem_cap() -> int:
    raw = os.environ.get(MEM_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MEM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MEM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{MEM_CAP_ENV} must be positive, got {cap}")
    return cap


def check_entries(n: int, what: str = "table") -> None:
    cap = mem_cap()
    if n > cap:
        raise ResourceLimitError(f"{what} needs {n} entries, memory cap is {cap}")


def check_exact(value: int, what: str = "value") -> int:
    if -EXACT_MAX - 1 <= value <= EXACT_MAX:
        return value
    raise ExactOverflowError(f"{what} = {value} exceeds the {EXACT_BITS + 1}-bit exact width")
