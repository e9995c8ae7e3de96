"""Records for executable inequality checks."""

from typing import Optional

from pydantic import BaseModel, Field


class BoundCheck(BaseModel):
    """Outcome of checking lhs <= rhs under a stated hypothesis."""

    name: str = Field(..., description="Which inequality was checked")
    lhs: float = Field(..., description="Measured left-hand side")
    rhs: Optional[float] = Field(default=None, description="Bound; absent if hypothesis fails")
    hypothesis_met: bool = Field(..., description="Whether the inequality's hypothesis holds")
    rel_tol: float = Field(default=1e-10, description="Relative slack allowed on the bound")

    @property
    def holds(self) -> Optional[bool]:
        """True/False when the hypothesis holds, None otherwise."""
        if not self.hypothesis_met or self.rhs is None:
            return None
        return self.lhs <= self.rhs * (1.0 + self.rel_tol)
