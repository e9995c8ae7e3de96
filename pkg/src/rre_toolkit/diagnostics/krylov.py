"""Krylov matrices S(y) = [y | Fy | ... | F^{k-1} y] and their smallest singular value."""

import logging
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError
from ..linalg.core import as_dense, as_vector, svd
from ..models.diagnostics import GlobalAssumptionReport

logger = logging.getLogger(__name__)


def krylov_matrix(F: ArrayLike, y: ArrayLike, k: int) -> np.ndarray:
    """
    Build S(y), N x k.

    Raises:
        ArgumentError: If y is zero, k < 1 or k > N
    """
    mat = as_dense(F, "F")
    vec = as_vector(y, "y")
    size = mat.shape[0]
    if mat.shape != (size, size) or vec.shape[0] != size:
        raise ArgumentError(f"F must be square and match y, got {mat.shape} and {vec.shape}")
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if k > size:
        raise ArgumentError(f"k={k} exceeds the dimension {size}")
    if not np.linalg.norm(vec) > 0:
        raise ArgumentError("Krylov start vector must be nonzero")

    columns = [vec]
    for _ in range(k - 1):
        columns.append(mat @ columns[-1])
    return np.column_stack(columns)


def sigma_k(F: ArrayLike, e: ArrayLike, k: int, rank_tol: Optional[float] = None) -> float:
    """sigma_k(S(e/||e||)); 0 when S has numerical rank below k."""
    vec = as_vector(e, "e")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ArgumentError("error direction must be nonzero")
    factors = svd(krylov_matrix(F, vec / norm, k), rank_tol)
    if factors.rank < k:
        return 0.0
    return float(factors.singular_values[k - 1])


def check_global_assumption(
    F: ArrayLike, e_points: Sequence[ArrayLike], k: int, rank_tol: Optional[float] = None
) -> GlobalAssumptionReport:
    """sigma_k(S(e)) for each error direction and their minimum."""
    values = [sigma_k(F, e, k, rank_tol) for e in e_points]
    report = GlobalAssumptionReport(
        k=k, sigma_values=values, minimum=min(values) if values else None
    )
    if report.minimum == 0.0:
        logger.warning(f"sigma_{k}(S(e)) vanished at one of {len(values)} points")
    return report
