"""Pydantic field type for float64 numpy vectors."""

from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def _to_vector(value: Any) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={arr.ndim}")
    return arr


def _to_list(value: np.ndarray) -> list[float]:
    return [float(v) for v in value.tolist()]


FloatVector = Annotated[
    np.ndarray,
    BeforeValidator(_to_vector),
    PlainSerializer(_to_list, return_type=list),
]
