"""
Cycling drivers.

C-Mode restarts every cycle from the previous extrapolant with fixed (n, k).
MC-Mode does the same but picks k per cycle by numerical degree detection.
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError, DegenerateWindowError, DivergenceError, RunAbortedError
from ..extrapolation.rre import IterateWindow, extrapolate
from ..models.extrapolation import ExtrapolationResult
from ..models.problem import FixedPointProblem
from ..models.trace import (
    CycleDiagnostics,
    CycleRecord,
    CycleTrace,
    ModeConfig,
    ModeKind,
    TerminationReason,
)
from .degree import detect_numerical_degree
from .iteration import IterateStream, check_iterate, counting, escape_radius, start_vector

logger = logging.getLogger(__name__)

CycleHook = Callable[[IterateWindow, ExtrapolationResult], Optional[CycleDiagnostics]]


class CyclingDriver(ABC):
    """Shared loop of the cycling modes."""

    mode: ModeKind

    def __init__(
        self,
        problem: FixedPointProblem,
        config: ModeConfig,
        on_cycle: Optional[CycleHook] = None,
    ):
        """
        Args:
            problem: Problem to solve; its known solution is used for error columns only
            config: Driver settings
            on_cycle: Called with each cycle's window and result; may return diagnostics
        """
        self.problem = problem
        self.config = config
        self.on_cycle = on_cycle
        self._weight = self._error_weight(problem)

    @staticmethod
    def _error_weight(problem: FixedPointProblem) -> Optional[np.ndarray]:
        """G = F(s) - I when both s and an analytic Jacobian are known."""
        if problem.solution is None or problem.jacobian is None:
            return None
        jac = np.asarray(problem.jacobian(problem.solution), dtype=np.float64)
        return jac - np.eye(problem.dimension)

    @abstractmethod
    def cycle_order(self, stream: IterateStream) -> int:
        """k to use in the current cycle."""

    @property
    def fixed_k(self) -> Optional[int]:
        return None

    def _record(
        self,
        cycle: int,
        x: np.ndarray,
        residual: float,
        f_evals: int,
        k_used: Optional[int] = None,
        result: Optional[ExtrapolationResult] = None,
        diagnostics: Optional[CycleDiagnostics] = None,
    ) -> CycleRecord:
        weighted = None
        if self._weight is not None and self.problem.solution is not None:
            weighted = float(np.linalg.norm(self._weight @ (x - self.problem.solution)))
        return CycleRecord(
            cycle=cycle,
            iterate=x,
            residual_norm=residual,
            error_norm=self.problem.error_norm(x),
            weighted_error_norm=weighted,
            k_used=k_used,
            f_evals=f_evals,
            extrapolation=result,
            diagnostics=diagnostics,
        )

    def run(self, x0: ArrayLike) -> CycleTrace:
        """
        Cycle from x0 until the residual drops to tol or max_cycles is reached.

        Returns:
            CycleTrace whose record 0 is x0

        Raises:
            DivergenceError: If a cycle's iterates blow up (trace attached)
            DegreeDetectionError: MC-Mode only (trace attached)
        """
        cfg = self.config
        counted, counter = counting(self.problem)
        x = start_vector(self.problem, x0)
        center = x
        radius = escape_radius(x, cfg.escape_factor)
        trace = CycleTrace(mode=self.mode, n=cfg.n, k=self.fixed_k)

        fx = counted.evaluate(x)
        residual = float(np.linalg.norm(fx - x))
        trace.add_record(self._record(0, x, residual, counter.count))
        if residual <= cfg.tol:
            trace.termination = TerminationReason.CONVERGED
            trace.message = "initial vector already satisfies the tolerance"
            return trace

        for cycle in range(1, cfg.max_cycles + 1):
            try:
                stream = IterateStream(counted, x, center=center, radius=radius, first_image=fx)
                k_r = self.cycle_order(stream)
                window = stream.window(cfg.n, k_r)
                result = extrapolate(window, cfg.rank_tol)
                x = result.s_nk
                check_iterate(x, cfg.n + k_r + 1, center, radius)
                fx = counted.evaluate(x)
                residual = float(np.linalg.norm(fx - x))
                if not np.isfinite(residual):
                    raise DivergenceError(f"residual is not finite in cycle {cycle}", index=cycle)
            except DegenerateWindowError as exc:
                logger.warning(f"{self.mode.value}-mode cycle {cycle}: {exc}")
                trace.termination = TerminationReason.DEGENERATE
                trace.message = str(exc)
                return trace
            except RunAbortedError as exc:
                trace.termination = (
                    TerminationReason.DIVERGED
                    if isinstance(exc, DivergenceError)
                    else TerminationReason.DEGREE_FAILURE
                )
                trace.message = f"cycle {cycle}: {exc}"
                exc.trace = trace
                logger.error(trace.message)
                raise

            if result.rank_deficient and not result.converged:
                logger.warning(
                    f"cycle {cycle}: W has numerical rank {result.numerical_rank} < k={k_r}"
                )
            diagnostics = self.on_cycle(window, result) if self.on_cycle is not None else None
            trace.add_record(
                self._record(cycle, x, residual, counter.count, k_r, result, diagnostics)
            )
            logger.debug(f"cycle {cycle}: k={k_r} residual={residual:.3e}")

            if result.converged or residual <= cfg.tol:
                trace.termination = TerminationReason.CONVERGED
                logger.info(f"{self.mode.value}-mode converged after {cycle} cycles")
                return trace

        trace.termination = TerminationReason.MAX_CYCLES
        trace.message = f"residual {residual:.3e} above tol after {cfg.max_cycles} cycles"
        return trace


class CModeDriver(CyclingDriver):
    """Fixed n and k in every cycle."""

    mode = ModeKind.C_MODE

    def cycle_order(self, stream: IterateStream) -> int:
        return self.config.k

    @property
    def fixed_k(self) -> Optional[int]:
        return self.config.k


class MCModeDriver(CyclingDriver):
    """k_r detected per cycle from the current iterates."""

    mode = ModeKind.MC_MODE

    def __init__(
        self,
        problem: FixedPointProblem,
        config: ModeConfig,
        on_cycle: Optional[CycleHook] = None,
    ):
        super().__init__(problem, config, on_cycle)
        self.k_max = config.k_max if config.k_max is not None else problem.dimension
        if self.k_max > problem.dimension:
            raise ArgumentError(
                f"k_max={self.k_max} exceeds the problem dimension {problem.dimension}"
            )

    def cycle_order(self, stream: IterateStream) -> int:
        cfg = self.config
        return detect_numerical_degree(stream, cfg.n, cfg.degree_tol, self.k_max, cfg.rank_tol)


def run_c_mode(
    problem: FixedPointProblem,
    config: ModeConfig,
    x0: ArrayLike,
    on_cycle: Optional[CycleHook] = None,
) -> CycleTrace:
    """C-Mode cycling (steps C0-C3)."""
    if config.mode != ModeKind.C_MODE:
        raise ArgumentError(f"run_c_mode needs mode 'c', got '{config.mode.value}'")
    return CModeDriver(problem, config, on_cycle).run(x0)


def run_mc_mode(
    problem: FixedPointProblem,
    config: ModeConfig,
    x0: ArrayLike,
    on_cycle: Optional[CycleHook] = None,
) -> CycleTrace:
    """MC-Mode cycling (steps MC0-MC3)."""
    if config.mode != ModeKind.MC_MODE:
        raise ArgumentError(f"run_mc_mode needs mode 'mc', got '{config.mode.value}'")
    return MCModeDriver(problem, config, on_cycle).run(x0)
