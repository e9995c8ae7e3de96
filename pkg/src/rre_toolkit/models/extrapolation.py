"""Data model for a single RRE extrapolation."""

from pydantic import BaseModel, ConfigDict, Field

from .arrays import FloatVector


class ExtrapolationResult(BaseModel):
    """The approximation s_{n,k} together with its weights and window metadata."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s_nk: FloatVector = Field(..., description="Extrapolated approximation to the fixed point")
    gamma: FloatVector = Field(..., description="Affine weights, length k+1, summing to one")
    xi: FloatVector = Field(..., description="Unconstrained coefficients, length k")

    residual_norm: float = Field(..., ge=0.0, description="||U_k gamma|| = ||u_n + W xi||")
    gamma_abs_sum: float = Field(..., ge=0.0, description="Sum of |gamma_i|")

    n: int = Field(..., ge=0, description="Base index of the window")
    k: int = Field(..., ge=1, description="Extrapolation order")
    dimension: int = Field(..., ge=1, description="Vector dimension N")

    numerical_rank: int = Field(..., ge=0, description="Numerical rank of W_{k-1}")
    rank_deficient: bool = Field(default=False, description="W_{k-1} rank below k")
    converged: bool = Field(default=False, description="Window was already stationary")

    @property
    def gamma_sum(self) -> float:
        return float(self.gamma.sum())
