"""Data models for the RRE toolkit."""

from .checks import BoundCheck
from .diagnostics import (
    DiagnosticFinding,
    DiagnosticsReport,
    GlobalAssumptionReport,
    PerturbationReport,
    Severity,
    ThetaBounds,
)
from .extrapolation import ExtrapolationResult
from .problem import FixedPointProblem, ProblemSpec
from .trace import (
    CycleDiagnostics,
    CycleRecord,
    CycleTrace,
    IterationTrace,
    ModeConfig,
    ModeKind,
    NModeStep,
    NModeTrace,
    TerminationReason,
)

__all__ = [
    "BoundCheck",
    "CycleDiagnostics",
    "CycleRecord",
    "CycleTrace",
    "IterationTrace",
    "DiagnosticFinding",
    "DiagnosticsReport",
    "ExtrapolationResult",
    "FixedPointProblem",
    "GlobalAssumptionReport",
    "ModeConfig",
    "ModeKind",
    "NModeStep",
    "NModeTrace",
    "PerturbationReport",
    "ProblemSpec",
    "Severity",
    "TerminationReason",
    "ThetaBounds",
]
