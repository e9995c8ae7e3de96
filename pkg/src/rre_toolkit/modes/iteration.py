"""Plain fixed-point iteration, evaluation counting and lazy iterate streams."""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError, DimensionMismatchError, DivergenceError
from ..extrapolation.rre import IterateWindow
from ..linalg.core import as_vector
from ..models.problem import FixedPointProblem
from ..models.trace import CycleRecord, IterationTrace, TerminationReason

logger = logging.getLogger(__name__)

DEFAULT_ESCAPE_FACTOR = 1e6


def escape_radius(x0: np.ndarray, factor: float = DEFAULT_ESCAPE_FACTOR) -> float:
    """factor * (1 + ||x0||)."""
    return factor * (1.0 + float(np.linalg.norm(x0)))


def start_vector(problem: FixedPointProblem, x0: ArrayLike) -> np.ndarray:
    """Validate an initial vector against the problem dimension."""
    x = as_vector(x0, "x0")
    if x.shape != (problem.dimension,):
        raise DimensionMismatchError(
            f"x0 has length {x.shape[0]}, problem '{problem.name}' has dimension {problem.dimension}"
        )
    return x


def check_iterate(x: np.ndarray, index: int, center: np.ndarray, radius: float) -> None:
    """Raise DivergenceError if x is non-finite or outside the escape ball."""
    if not np.all(np.isfinite(x)):
        raise DivergenceError(f"iterate {index} is not finite", index=index)
    distance = float(np.linalg.norm(x - center))
    if distance > radius:
        raise DivergenceError(
            f"iterate {index} left the escape ball ({distance:.3e} > {radius:.3e})", index=index
        )


@dataclass
class EvaluationCounter:
    """Number of calls made to a problem's map."""

    count: int = 0


def counting(problem: FixedPointProblem) -> tuple[FixedPointProblem, EvaluationCounter]:
    """Copy of the problem whose map increments a counter on every call."""
    counter = EvaluationCounter()
    inner = problem.f

    def counted(x: np.ndarray) -> np.ndarray:
        counter.count += 1
        return inner(x)

    wrapped = replace(problem, f=counted)
    # construction re-checks the stored solution through f
    counter.count = 0
    return wrapped, counter


def iterate(
    problem: FixedPointProblem,
    x0: ArrayLike,
    count: int,
    radius: Optional[float] = None,
) -> list[np.ndarray]:
    """
    Generate x_0, ..., x_count with x_{m+1} = f(x_m).

    Args:
        problem: Fixed-point problem
        x0: Initial vector
        count: Number of applications of f
        radius: Escape radius around x0; defaults to 1e6 * (1 + ||x0||)

    Returns:
        List of count + 1 vectors

    Raises:
        DivergenceError: If an iterate is non-finite or escapes
    """
    if count < 0:
        raise ArgumentError(f"count must be >= 0, got {count}")
    x = start_vector(problem, x0)
    limit = escape_radius(x) if radius is None else radius

    iterates = [x.copy()]
    for m in range(1, count + 1):
        x = problem.evaluate(x)
        check_iterate(x, m, iterates[0], limit)
        iterates.append(x)
    return iterates


class IterateStream:
    """
    Lazily extended sequence x_0, x_1, ... of one starting vector.

    Iterates are cached so windows of growing k share the work already done.
    """

    def __init__(
        self,
        problem: FixedPointProblem,
        x0: np.ndarray,
        center: Optional[np.ndarray] = None,
        radius: Optional[float] = None,
        first_image: Optional[np.ndarray] = None,
    ):
        """
        Args:
            problem: Problem whose map generates the sequence
            x0: Starting vector
            center: Center of the escape ball (defaults to x0)
            radius: Escape radius (defaults to 1e6 * (1 + ||center||))
            first_image: Already computed f(x0), reused as x_1
        """
        self._problem = problem
        self._center = x0 if center is None else center
        self._radius = escape_radius(self._center) if radius is None else radius
        self._iterates: list[np.ndarray] = [x0]
        if first_image is not None:
            check_iterate(first_image, 1, self._center, self._radius)
            self._iterates.append(first_image)

    def __len__(self) -> int:
        return len(self._iterates)

    def extend_to(self, index: int) -> None:
        """Make sure x_index is available."""
        while len(self._iterates) <= index:
            m = len(self._iterates)
            x = self._problem.evaluate(self._iterates[-1])
            check_iterate(x, m, self._center, self._radius)
            self._iterates.append(x)

    def get(self, index: int) -> np.ndarray:
        self.extend_to(index)
        return self._iterates[index]

    def window(self, n: int, k: int) -> IterateWindow:
        """Window x_n .. x_{n+k+1}."""
        self.extend_to(n + k + 1)
        return IterateWindow.from_iterates(self._iterates, n, k)


def plain_iteration(
    problem: FixedPointProblem,
    x0: ArrayLike,
    max_iterations: int,
    tol: float,
    escape_factor: float = DEFAULT_ESCAPE_FACTOR,
) -> IterationTrace:
    """
    Iterate without extrapolation until ||f(x_m) - x_m|| <= tol.

    Record m holds x_m; its residual uses x_{m+1}, so f_evals is m + 1.

    Raises:
        DivergenceError: With the partial trace attached
    """
    x = start_vector(problem, x0)
    radius = escape_radius(x, escape_factor)
    trace = IterationTrace()

    for m in range(max_iterations + 1):
        try:
            fx = problem.evaluate(x)
            check_iterate(fx, m + 1, trace.records[0].iterate if trace.records else x, radius)
        except DivergenceError as exc:
            trace.termination = TerminationReason.DIVERGED
            trace.message = str(exc)
            exc.trace = trace
            raise

        residual = float(np.linalg.norm(fx - x))
        trace.add_record(
            CycleRecord(
                cycle=m,
                iterate=x,
                residual_norm=residual,
                error_norm=problem.error_norm(x),
                f_evals=m + 1,
            )
        )
        if residual <= tol:
            trace.termination = TerminationReason.CONVERGED
            logger.info(f"Plain iteration converged after {m} steps")
            return trace
        x = fx

    trace.termination = TerminationReason.MAX_CYCLES
    trace.message = f"no convergence within {max_iterations} iterations"
    return trace
