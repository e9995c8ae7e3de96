"""Data models for convergence diagnostics."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .arrays import FloatVector


class Severity(str, Enum):
    """Finding severity levels."""
    CRITICAL = "critical"
    WARNING = "warning"
    INFO = "info"


class DiagnosticFinding(BaseModel):
    """A single observation about a problem or run."""

    title: str = Field(..., description="Short title of the finding")
    description: str = Field(..., description="Detailed description")
    severity: Severity = Field(default=Severity.INFO)


class ThetaBounds(BaseModel):
    """Upper bounds on theta_k; a bound is absent when its hypothesis fails."""

    k: int = Field(..., ge=1)
    power: float = Field(..., ge=0.0, description="||F||^k")
    pd_hermitian_part: Optional[float] = Field(
        default=None, description="(1 - nu^2/sigma^2)^(k/2) when (E + E^T)/2 is positive definite"
    )
    chebyshev: Optional[float] = Field(
        default=None, description="2((sqrt(kappa)-1)/(sqrt(kappa)+1))^k for symmetric F"
    )
    chebyshev_exact: Optional[float] = Field(
        default=None, description="1/T_k((2-alpha-beta)/(beta-alpha)) for symmetric F"
    )

    def applicable(self) -> list[float]:
        """All bounds whose hypotheses hold."""
        values = [self.power, self.pd_hermitian_part, self.chebyshev, self.chebyshev_exact]
        return [v for v in values if v is not None]

    @property
    def tightest(self) -> float:
        return min(self.applicable())


class GlobalAssumptionReport(BaseModel):
    """sigma_k(S(e)) at each supplied error direction."""

    k: int
    sigma_values: list[float] = Field(default_factory=list)
    minimum: Optional[float] = Field(default=None, description="Absent for an empty point list")


class PerturbationReport(BaseModel):
    """Companion-sequence perturbation quantities for one window."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    k: int
    delta: float = Field(..., description="||W_tilde^+|| ||W_check||")
    h_norm: float = Field(..., description="||W^+ - W_tilde^+||")
    h_bound: Optional[float] = Field(default=None, description="sqrt(2) Delta/(1-Delta) ||W_tilde^+||")
    delta_below_one: bool
    bound_holds: Optional[bool] = Field(default=None)
    companion_rank: int = Field(..., description="Numerical rank of W_tilde")
    rank_deficient: bool = Field(default=False)

    s_nk: FloatVector = Field(..., description="RRE on the actual iterates")
    s_tilde: FloatVector = Field(..., description="RRE on the companion linear iterates")
    s_check: FloatVector = Field(..., description="Second-order part from the split formula")
    split_mismatch: float = Field(..., description="||(s_nk - s_tilde) - s_check||")


class DiagnosticsReport(BaseModel):
    """Theory-side quantities for a problem and, optionally, a run."""

    l_estimate: float = Field(..., description="||F|| at the evaluation point")
    spectral_radius: float = Field(..., description="rho(F)")
    evaluated_at: str = Field(..., description="'solution' or 'final_iterate'")

    theta_bounds: list[ThetaBounds] = Field(default_factory=list)

    sigma_k_s: list[Optional[float]] = Field(default_factory=list, description="Per-cycle sigma_k(S(e_n))")
    sigma_k_s_min: Optional[float] = Field(default=None)

    gamma_abs_sums: list[float] = Field(default_factory=list)
    gamma_abs_sum_max: Optional[float] = Field(default=None, description="Empirical Gamma")

    jbilou_sadok: list[Optional[float]] = Field(default_factory=list)

    delta: Optional[float] = Field(default=None)
    perturbation: Optional[PerturbationReport] = Field(default=None)

    findings: list[DiagnosticFinding] = Field(default_factory=list)

    @property
    def warning_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == Severity.WARNING)
