"""Exception hierarchy shared by every module."""


class CohenMomentsError(Exception):
    """Base class for all library errors."""


class DomainError(CohenMomentsError, ValueError):
    """Arguments outside the region where an operation is defined.

    Covers excluded parameters, theorem regions, poles and out-of-table
    ranges.
    """


class ResourceLimitError(CohenMomentsError, MemoryError):
    """A table or loop would exceed the configured memory or scale cap."""


class ExactOverflowError(CohenMomentsError, OverflowError):
    """An exact integer left the supported signed width."""


class NumericIntegrityError(CohenMomentsError, ArithmeticError):
    """A floating evaluation failed its own consistency check."""
