"""Convergence diagnostics: Jacobians, theta_k bounds, Krylov monitors and perturbation checks."""

from .bounds import (
    chebyshev_estimate,
    chebyshev_exact,
    is_symmetric,
    spectral_summary,
    theta_upper_bounds,
)
from .conditions import jbilou_sadok_condition
from .jacobian import jacobian_fd
from .krylov import check_global_assumption, krylov_matrix, sigma_k
from .perturbation import (
    ErrorSplit,
    companion_iterates,
    companion_window,
    error_split,
    perturbation_quantities,
    remainder_ratios,
)
from .report import CycleMonitor, build_report, jacobian_at

__all__ = [
    "CycleMonitor",
    "ErrorSplit",
    "build_report",
    "chebyshev_estimate",
    "chebyshev_exact",
    "check_global_assumption",
    "companion_iterates",
    "companion_window",
    "error_split",
    "is_symmetric",
    "jacobian_at",
    "jacobian_fd",
    "jbilou_sadok_condition",
    "krylov_matrix",
    "perturbation_quantities",
    "remainder_ratios",
    "sigma_k",
    "spectral_summary",
    "theta_upper_bounds",
]
