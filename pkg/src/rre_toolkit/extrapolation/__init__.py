"""RRE extrapolation core."""

from .rre import (
    DifferenceMatrices,
    IterateWindow,
    build_differences,
    extrapolate,
    gamma_direct,
    gamma_from_xi,
    xi_from_gamma,
)

__all__ = [
    "DifferenceMatrices",
    "IterateWindow",
    "build_differences",
    "extrapolate",
    "gamma_direct",
    "gamma_from_xi",
    "xi_from_gamma",
]
