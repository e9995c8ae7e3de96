"""Dispatch a ModeConfig to the matching driver."""

from typing import Optional, Union

from numpy.typing import ArrayLike

from ..models.problem import FixedPointProblem
from ..models.trace import CycleTrace, ModeConfig, ModeKind, NModeTrace
from .cycling import CycleHook, run_c_mode, run_mc_mode
from .n_mode import run_n_mode

RunTrace = Union[CycleTrace, NModeTrace]


def run_mode(
    problem: FixedPointProblem,
    config: ModeConfig,
    x0: ArrayLike,
    on_cycle: Optional[CycleHook] = None,
) -> RunTrace:
    """Run the driver selected by config.mode; n-Mode uses max_cycles as n_max."""
    if config.mode == ModeKind.N_MODE:
        return run_n_mode(
            problem,
            x0,
            k=config.k,
            n_max=config.max_cycles,
            rank_tol=config.rank_tol,
            escape_factor=config.escape_factor,
        )
    if config.mode == ModeKind.C_MODE:
        return run_c_mode(problem, config, x0, on_cycle)
    return run_mc_mode(problem, config, x0, on_cycle)
