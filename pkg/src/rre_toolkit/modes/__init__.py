"""Fixed-point drivers: plain iteration, n-Mode, C-Mode and MC-Mode."""

from .cycling import CModeDriver, CycleHook, CyclingDriver, MCModeDriver, run_c_mode, run_mc_mode
from .degree import detect_numerical_degree, relative_lsq_residual
from .iteration import (
    EvaluationCounter,
    IterateStream,
    counting,
    escape_radius,
    iterate,
    plain_iteration,
)
from .n_mode import error_ratios, run_n_mode
from .runner import RunTrace, run_mode

__all__ = [
    "CModeDriver",
    "CycleHook",
    "CyclingDriver",
    "EvaluationCounter",
    "IterateStream",
    "MCModeDriver",
    "RunTrace",
    "counting",
    "detect_numerical_degree",
    "error_ratios",
    "escape_radius",
    "iterate",
    "plain_iteration",
    "relative_lsq_residual",
    "run_c_mode",
    "run_mc_mode",
    "run_mode",
    "run_n_mode",
]
