"""Fixed-point problem and problem-suite records."""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Optional

import numpy as np

from ..errors import ArgumentError, DimensionMismatchError

VectorMap = Callable[[np.ndarray], np.ndarray]
JacobianMap = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FixedPointProblem:
    """The map f: R^N -> R^N with optional analytic Jacobian and known solution.

    The solution is for error reporting only; no solver path reads it. A
    stored solution must satisfy ||f(s) - s|| <= 1e-10 (1 + ||s||).
    """

    dimension: int
    f: VectorMap
    jacobian: Optional[JacobianMap] = None
    solution: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ArgumentError(f"dimension must be >= 1, got {self.dimension}")
        if self.solution is None:
            return
        if np.shape(self.solution) != (self.dimension,):
            raise DimensionMismatchError(
                f"solution has shape {np.shape(self.solution)}, expected ({self.dimension},)"
            )
        object.__setattr__(self, "solution", np.asarray(self.solution, dtype=np.float64))
        self.verify_solution()

    @property
    def has_solution(self) -> bool:
        return self.solution is not None

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Apply f and check the output shape."""
        y = np.asarray(self.f(x), dtype=np.float64)
        if y.shape != (self.dimension,):
            raise DimensionMismatchError(
                f"f returned shape {y.shape}, expected ({self.dimension},)"
            )
        return y

    def residual_norm(self, x: np.ndarray) -> float:
        """||f(x) - x||."""
        return float(np.linalg.norm(self.evaluate(x) - x))

    def error_norm(self, x: np.ndarray) -> Optional[float]:
        """||x - s|| when s is known."""
        if self.solution is None:
            return None
        return float(np.linalg.norm(x - self.solution))

    def verify_solution(self, rel_tol: float = 1e-10) -> None:
        """Check ||f(s) - s|| <= rel_tol * (1 + ||s||)."""
        if self.solution is None:
            return
        res = self.residual_norm(self.solution)
        limit = rel_tol * (1.0 + float(np.linalg.norm(self.solution)))
        if res > limit:
            raise ArgumentError(
                f"stored solution of '{self.name}' is not a fixed point: residual {res:.3e} > {limit:.3e}"
            )

    def without_solution(self) -> "FixedPointProblem":
        """Copy with the known solution removed (production-like view)."""
        return replace(self, solution=None)


@dataclass(frozen=True)
class ProblemSpec:
    """A constructed problem with the metadata the acceptance suite relies on."""

    name: str
    problem: FixedPointProblem
    provenance: str
    params: dict[str, Any] = field(default_factory=dict)
    jacobian_at_solution: Optional[np.ndarray] = None
    expected_degree: Optional[int] = None
    contractive: bool = True

    @property
    def dimension(self) -> int:
        return self.problem.dimension

    @property
    def solution(self) -> Optional[np.ndarray]:
        return self.problem.solution

    def initial_vector(self, seed: int, radius: float) -> np.ndarray:
        """
        Seeded start vector at distance `radius` from the solution.

        Problems without a stored solution are started at distance `radius`
        from the origin.
        """
        rng = np.random.default_rng(seed)
        direction = rng.standard_normal(self.dimension)
        direction /= np.linalg.norm(direction)
        center = self.solution if self.solution is not None else np.zeros(self.dimension)
        return center + radius * direction

    def without_solution(self) -> "ProblemSpec":
        return replace(self, problem=self.problem.without_solution(), jacobian_at_solution=None)
