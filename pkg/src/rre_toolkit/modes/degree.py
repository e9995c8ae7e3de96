"""Numerical detection of the minimal-polynomial degree for MC-Mode."""

import logging
from typing import Optional

import numpy as np

from ..errors import ArgumentError, DegreeDetectionError
from ..extrapolation.rre import build_differences
from ..linalg.core import min_norm_lsq
from .iteration import IterateStream

logger = logging.getLogger(__name__)


def relative_lsq_residual(stream: IterateStream, n: int, k: int, rank_tol: Optional[float] = None) -> float:
    """||u_n + W_{k-1} xi|| / ||u_n|| for the window at n; 0 when u_n vanishes."""
    diffs = build_differences(stream.window(n, k))
    u_n = diffs.u_n
    u_norm = float(np.linalg.norm(u_n))
    if u_norm == 0.0:
        return 0.0
    xi = -min_norm_lsq(diffs.w, u_n, rank_tol=rank_tol)
    return float(np.linalg.norm(u_n + diffs.w @ xi)) / u_norm


def detect_numerical_degree(
    stream: IterateStream,
    n: int,
    degree_tol: float,
    k_max: int,
    rank_tol: Optional[float] = None,
) -> int:
    """
    Smallest k whose window at n leaves a relative residual below degree_tol.

    Args:
        stream: Iterates of the current cycle
        n: Window base index
        degree_tol: Relative residual threshold
        k_max: Largest k tried
        rank_tol: Relative rank cutoff for W

    Returns:
        Detected degree k

    Raises:
        DegreeDetectionError: If no k <= k_max qualifies
    """
    if degree_tol <= 0:
        raise ArgumentError(f"degree_tol must be > 0, got {degree_tol}")
    if k_max < 1:
        raise ArgumentError(f"k_max must be >= 1, got {k_max}")

    best = np.inf
    for k in range(1, k_max + 1):
        ratio = relative_lsq_residual(stream, n, k, rank_tol)
        logger.debug(f"degree test at k={k}: relative residual {ratio:.3e}")
        if ratio < degree_tol:
            return k
        best = min(best, ratio)

    raise DegreeDetectionError(
        f"no k <= {k_max} reached relative residual {degree_tol:.1e} (best {best:.3e})"
    )
