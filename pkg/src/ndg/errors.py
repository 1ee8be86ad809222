"""Semantic exception hierarchy for the ndg package.

Every error raised by this package derives from :class:`NdgError`, so callers
can catch one base type at API boundaries (the CLI and the HTTP service map
these onto exit codes / status codes).
"""

from __future__ import annotations

__all__ = [
    "NdgError",
    "EmptyInput",
    "NonFiniteValue",
    "SampleTooSmall",
    "TiesInX",
    "TiesInY",
    "DegenerateRanks",
    "MalformedRectangle",
    "UnknownSpecName",
    "BadParams",
    "TooManyPoints",
]


class NdgError(Exception):
    """Base class for all package errors."""


class EmptyInput(NdgError):
    """No data was supplied where at least one observation is required."""


class NonFiniteValue(NdgError):
    """A NaN or infinity was found in the input data."""


class SampleTooSmall(NdgError):
    """Fewer observations than the operation needs (n >= 2 for the statistics)."""


class TiesInX(NdgError):
    """Exact duplicate x values under the strict tie policy."""


class TiesInY(NdgError):
    """Exact duplicate y values under the strict tie policy."""


class DegenerateRanks(NdgError):
    """A rank vector is constant, so a rank correlation is undefined."""


class MalformedRectangle(NdgError):
    """Rectangle bounds do not satisfy x1 < x2 and y1 < y2."""


class UnknownSpecName(NdgError):
    """Requested builtin distribution spec does not exist."""


class BadParams(NdgError):
    """Structurally invalid parameters (weights, geometry, depths, cells...)."""


class TooManyPoints(NdgError):
    """Guard for brute-force oracles that only accept small point sets."""
