"""Finite-difference Jacobians."""

from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError, NumericalFailureError
from ..linalg.core import as_vector

DEFAULT_STEP = 1e-5


def jacobian_fd(
    f: Callable[[np.ndarray], np.ndarray], x: ArrayLike, h: float = DEFAULT_STEP
) -> np.ndarray:
    """
    Central-difference Jacobian; column j is (f(x + h e_j) - f(x - h e_j)) / 2h.

    Raises:
        ArgumentError: If h <= 0
        NumericalFailureError: If any evaluation is non-finite
    """
    if not h > 0:
        raise ArgumentError(f"step h must be > 0, got {h}")
    point = as_vector(x, "x")
    size = point.shape[0]
    columns = []
    for j in range(size):
        step = np.zeros(size)
        step[j] = h
        forward = np.asarray(f(point + step), dtype=np.float64)
        backward = np.asarray(f(point - step), dtype=np.float64)
        if not (np.all(np.isfinite(forward)) and np.all(np.isfinite(backward))):
            raise NumericalFailureError(f"non-finite evaluation while differencing column {j}")
        columns.append((forward - backward) / (2.0 * h))
    return np.column_stack(columns)
