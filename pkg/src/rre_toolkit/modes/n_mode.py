"""n-Mode: extrapolate one long iterate sequence for n = 0..n_max at fixed k."""

import logging
from typing import Optional

from numpy.typing import ArrayLike

from ..errors import ArgumentError, DegenerateWindowError
from ..extrapolation.rre import IterateWindow, extrapolate
from ..models.problem import FixedPointProblem
from ..models.trace import NModeStep, NModeTrace, TerminationReason
from .iteration import DEFAULT_ESCAPE_FACTOR, escape_radius, iterate, start_vector

logger = logging.getLogger(__name__)


def run_n_mode(
    problem: FixedPointProblem,
    x0: ArrayLike,
    k: int,
    n_max: int,
    rank_tol: Optional[float] = None,
    escape_factor: float = DEFAULT_ESCAPE_FACTOR,
) -> NModeTrace:
    """
    Compute s_{n,k} for every n = 0..n_max from the iterates x_0..x_{n_max+k+1}.

    A stationary window ends the scan with termination CONVERGED. So does a
    window whose second differences vanish while the first do not, which on a
    converging sequence means the iterates sit at the rounding floor.
    Residuals of s_{n,k} are measured outside the evaluation count.

    Raises:
        DivergenceError: If the iterates blow up
    """
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if n_max < 0:
        raise ArgumentError(f"n_max must be >= 0, got {n_max}")

    x = start_vector(problem, x0)
    iterates = iterate(problem, x, n_max + k + 1, radius=escape_radius(x, escape_factor))
    trace = NModeTrace(k=k)

    for n in range(n_max + 1):
        window = IterateWindow.from_iterates(iterates, n, k)
        try:
            result = extrapolate(window, rank_tol)
        except DegenerateWindowError as exc:
            logger.info(f"n-Mode stopped at n={n}: {exc}")
            trace.termination = TerminationReason.CONVERGED
            return trace

        x_n = window.iterate(0)
        trace.steps.append(
            NModeStep(
                n=n,
                extrapolation=result,
                residual_norm=problem.residual_norm(result.s_nk),
                error_norm=problem.error_norm(result.s_nk),
                iterate_error_norm=problem.error_norm(x_n),
                f_evals=n + k + 1,
            )
        )
        if result.converged:
            logger.info(f"n-Mode window at n={n} is stationary")
            trace.termination = TerminationReason.CONVERGED
            return trace

    logger.info(f"n-Mode finished {n_max + 1} extrapolations with k={k}")
    return trace


def error_ratios(trace: NModeTrace) -> list[Optional[float]]:
    """||s_{n,k} - s|| / ||eps_n|| per step, None where undefined."""
    ratios: list[Optional[float]] = []
    for step in trace.steps:
        if step.error_norm is None or not step.iterate_error_norm:
            ratios.append(None)
        else:
            ratios.append(step.error_norm / step.iterate_error_norm)
    return ratios
