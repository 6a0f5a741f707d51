"""Shared exception types.

Every rejection carries a message naming the offending entry, so callers can
surface validation failures without re-deriving them.
"""

__all__ = [
    "ChainboundsError",
    "MetricValidationError",
    "DomainError",
    "CapacityError",
    "ConvergenceError",
    "UnsupportedFamilyError",
    "ModelError",
    "MissingConstantError",
]


class ChainboundsError(ValueError):
    """Base class for all library-specific errors."""


class MetricValidationError(ChainboundsError):
    """A distance matrix is not a finite semi-metric (message names the entry)."""


class DomainError(ChainboundsError):
    """An argument lies outside the validity range of a bound or operation."""


class CapacityError(ChainboundsError):
    """An exact computation was requested above its combinatorial size cap."""


class ConvergenceError(ChainboundsError):
    """An iterative solver exhausted its iteration budget."""


class UnsupportedFamilyError(ChainboundsError):
    """No closed form is available for the requested distribution family."""


class ModelError(ChainboundsError):
    """A process model is inconsistent (unknown mean, violated increment bound, ...)."""


class MissingConstantError(ChainboundsError):
    """A bound requires a fitted constant that was not supplied."""
