"""Exception hierarchy for the RRE toolkit."""

from typing import Any, Optional


class RreToolkitError(Exception):
    """Base class for all toolkit errors."""


class ArgumentError(RreToolkitError, ValueError):
    """Raised when an argument violates a documented precondition."""


class DimensionMismatchError(ArgumentError):
    """Raised when vectors or matrices have incompatible shapes."""


class NumericalFailureError(RreToolkitError):
    """Raised when a numerical kernel fails (e.g. SVD does not converge)."""


class ZeroRankError(NumericalFailureError):
    """Raised when a matrix is numerically zero but a nonzero rank is required."""


class DegenerateWindowError(RreToolkitError):
    """Raised when the second differences vanish while the first do not."""


class ContractionError(ArgumentError):
    """Raised when a problem fails its numerical contraction check."""


class UnknownProblemError(ArgumentError):
    """Raised for a problem name missing from the registry."""


class UnsupportedDiagnosticError(RreToolkitError):
    """Raised when a diagnostic needs data the problem does not provide."""


class ConfigError(RreToolkitError):
    """Raised for unreadable or invalid run configuration."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RunAbortedError(RreToolkitError):
    """Base for driver errors that carry the trace recorded before the failure."""

    def __init__(self, message: str, trace: Optional[Any] = None):
        super().__init__(message)
        self.trace = trace


class DivergenceError(RunAbortedError):
    """Raised when an iterate is non-finite or leaves the escape ball."""

    def __init__(self, message: str, index: int, trace: Optional[Any] = None):
        super().__init__(message, trace=trace)
        self.index = index


class DegreeDetectionError(RunAbortedError):
    """Raised when no k up to k_max drops the residual below degree_tol."""
