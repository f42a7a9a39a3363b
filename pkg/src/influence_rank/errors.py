"""Exception hierarchy shared by all modules.

The CLI maps each family to a fixed exit status, so new error types should
subclass one of these rather than ``Exception`` directly.
"""

from __future__ import annotations


class InfluenceRankError(Exception):
    """Base class for every error raised by this package."""


class InputError(InfluenceRankError, ValueError):
    """Malformed input data or an invalid parameter value."""


class GraphParseError(InputError):
    """An edge-list line could not be turned into an edge."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class VoteLogError(InputError):
    """A vote log is missing columns or contains conflicting rows."""


class ConvergenceError(InfluenceRankError, ArithmeticError):
    """An iterative method stopped without meeting its tolerance."""

    def __init__(self, message: str, residual: float | None = None,
                 iterations: int | None = None):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class SeriesDivergenceError(ConvergenceError):
    """A fixed-point series grows instead of converging."""


class DomainError(InfluenceRankError, ValueError):
    """A measure was requested outside the parameter range where it exists."""


class UndefinedCorrelationError(InfluenceRankError, ArithmeticError):
    """Correlation requested for a constant (zero-variance) ranking."""
