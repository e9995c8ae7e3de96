"""Determinant condition on normalized first differences."""

from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError
from ..linalg.core import as_dense


def jbilou_sadok_condition(columns: Union[ArrayLike, Sequence[ArrayLike]]) -> float:
    """
    sqrt(det(Y^T Y)) where Y holds the columns scaled to unit length.

    Args:
        columns: N x k matrix, or a list of k vectors

    Raises:
        ArgumentError: If a column is zero
    """
    if isinstance(columns, (list, tuple)):
        y = as_dense(np.column_stack(columns), "columns")
    else:
        y = as_dense(columns, "columns")
    norms = np.linalg.norm(y, axis=0)
    if np.any(norms == 0.0):
        raise ArgumentError("cannot normalize a zero column")
    y = y / norms
    gram_det = float(np.linalg.det(y.T @ y))
    return float(np.sqrt(max(gram_det, 0.0)))
