"""Data models for driver configuration and run traces."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .arrays import FloatVector
from .extrapolation import ExtrapolationResult


class ModeKind(str, Enum):
    """Usage mode of the extrapolation method."""
    N_MODE = "n"
    C_MODE = "c"
    MC_MODE = "mc"


class TerminationReason(str, Enum):
    """Why a run stopped."""
    CONVERGED = "converged"
    MAX_CYCLES = "max_cycles"
    DEGENERATE = "degenerate"
    DIVERGED = "diverged"
    DEGREE_FAILURE = "degree_failure"
    COMPLETED = "completed"


class ModeConfig(BaseModel):
    """User choices for a driver run (steps C0 / MC0)."""

    model_config = ConfigDict(extra="forbid")

    mode: ModeKind = Field(default=ModeKind.C_MODE, description="Usage mode")
    n: int = Field(default=0, ge=0, description="Window base index within a cycle")
    k: int = Field(default=1, ge=1, description="Extrapolation order (ignored in MC-Mode)")
    max_cycles: int = Field(default=50, ge=1, description="Cycle cap; n_max in n-Mode")
    tol: float = Field(default=1e-10, gt=0.0, description="Stop when ||f(x) - x|| <= tol")
    rank_tol: Optional[float] = Field(default=None, ge=0.0, description="Relative rank cutoff")
    degree_tol: float = Field(default=1e-10, gt=0.0, description="MC-Mode degree detection tolerance")
    k_max: Optional[int] = Field(default=None, ge=1, description="MC-Mode degree cap (default N)")
    escape_factor: float = Field(default=1e6, gt=0.0, description="Escape radius factor times (1 + ||x0||)")


class CycleDiagnostics(BaseModel):
    """Per-cycle monitor values."""

    sigma_k_s: Optional[float] = Field(default=None, description="sigma_k(S(e_n)); needs s and F(s)")
    jbilou_sadok: Optional[float] = Field(default=None, description="sqrt(det(Y^T Y)) of normalized u columns")
    gamma_abs_sum: float = Field(..., description="Sum of |gamma_i| of the cycle's extrapolation")


class CycleRecord(BaseModel):
    """One entry of a cycling trace; cycle 0 is the initial vector."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    cycle: int = Field(..., ge=0)
    iterate: FloatVector = Field(..., description="s^(r)")
    residual_norm: float = Field(..., description="||f(s^(r)) - s^(r)||")
    error_norm: Optional[float] = Field(default=None, description="||s^(r) - s|| when s is known")
    weighted_error_norm: Optional[float] = Field(
        default=None, description="||(F(s) - I)(s^(r) - s)|| when s and F(s) are known"
    )
    k_used: Optional[int] = Field(default=None, description="k_r of this cycle")
    f_evals: int = Field(..., ge=0, description="Cumulative evaluations of f")
    extrapolation: Optional[ExtrapolationResult] = Field(default=None)
    diagnostics: Optional[CycleDiagnostics] = Field(default=None)


class IterationTrace(BaseModel):
    """Records of a plain fixed-point iteration; record m holds x_m."""

    records: list[CycleRecord] = Field(default_factory=list)
    termination: Optional[TerminationReason] = Field(default=None)
    message: str = Field(default="")

    def add_record(self, record: CycleRecord) -> None:
        self.records.append(record)

    @property
    def cycle_records(self) -> list[CycleRecord]:
        """Records after the initial vector."""
        return [r for r in self.records if r.cycle > 0]

    @property
    def cycle_count(self) -> int:
        return len(self.cycle_records)

    @property
    def converged(self) -> bool:
        return self.termination == TerminationReason.CONVERGED

    @property
    def final_iterate(self) -> Optional[np.ndarray]:
        return self.records[-1].iterate if self.records else None

    @property
    def f_evals(self) -> int:
        return self.records[-1].f_evals if self.records else 0

    def error_norms(self) -> list[Optional[float]]:
        return [r.error_norm for r in self.records]


class CycleTrace(IterationTrace):
    """Complete record of a C-Mode or MC-Mode run; record 0 is the initial vector."""

    mode: ModeKind
    n: int
    k: Optional[int] = Field(default=None, description="Fixed k (C-Mode only)")


class NModeStep(BaseModel):
    """s_{n,k} for one n of an n-Mode scan."""

    n: int = Field(..., ge=0)
    extrapolation: ExtrapolationResult
    residual_norm: float = Field(..., description="||f(s_nk) - s_nk||")
    error_norm: Optional[float] = Field(default=None, description="||s_nk - s||")
    iterate_error_norm: Optional[float] = Field(default=None, description="||eps_n|| = ||x_n - s||")
    f_evals: int = Field(..., description="Iterates x_1..x_{n+k+1} needed for this step")


class NModeTrace(BaseModel):
    """n-Mode scan over n = 0..n_max with fixed k."""

    k: int
    steps: list[NModeStep] = Field(default_factory=list)
    termination: TerminationReason = Field(default=TerminationReason.COMPLETED)

    @property
    def converged(self) -> bool:
        return self.termination == TerminationReason.CONVERGED
