"""Exception hierarchy shared across the package.

Verification never raises: invalid factorizations are reported through
``Verdict`` objects.  Exceptions are reserved for contract violations
(bad parameters, malformed data) and for resource-limit outcomes.
"""

from __future__ import annotations


class DhwpError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(DhwpError, ValueError):
    """A parameter is outside an operation's documented domain."""


class InvalidCycleError(DhwpError, ValueError):
    """A vertex sequence does not describe a directed cycle."""


class InfeasibleParametersError(DhwpError):
    """A construction was asked for an instance violating a necessary condition."""


class UnsupportedShapeError(DhwpError):
    """Equipartite factorization parameters outside the supported shapes."""


class UnsupportedByAtlasError(DhwpError):
    """A construction needs a base case the catalogue cannot supply."""


class UnknownOpenError(DhwpError):
    """The requested instance is recorded as unsettled (no certificate known)."""


class GenerationTimeoutError(DhwpError):
    """Search-backed generation ran out of budget before finding a witness."""


class CacheCorruptionError(DhwpError):
    """A cached entry failed verification on load."""


class AtlasParseError(DhwpError):
    """Catalogue text could not be parsed or an entry failed verification."""
