"""Spectral quantities and upper bounds on theta_k."""

import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from ..errors import ArgumentError
from ..linalg.core import as_dense, operator_norm
from ..models.diagnostics import ThetaBounds

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12


def spectral_summary(F: ArrayLike) -> tuple[float, float]:
    """(||F||, rho(F))."""
    mat = as_dense(F, "F")
    eigenvalues = scipy.linalg.eigvals(mat)
    return operator_norm(mat), float(np.max(np.abs(eigenvalues)))


def is_symmetric(F: np.ndarray, tol: float = SYMMETRY_TOL) -> bool:
    return operator_norm(F - F.T) <= tol * max(operator_norm(F), 1.0)


def chebyshev_exact(alpha: float, beta: float, k: int) -> float:
    """1 / T_k((2 - alpha - beta) / (beta - alpha)); 0 for a collapsed interval."""
    if beta - alpha <= 0.0:
        return 0.0
    t = (2.0 - alpha - beta) / (beta - alpha)
    return float(1.0 / np.cosh(k * np.arccosh(t)))


def chebyshev_estimate(alpha: float, beta: float, k: int) -> float:
    """2 ((sqrt(kappa) - 1) / (sqrt(kappa) + 1))^k with kappa = (1 - alpha) / (1 - beta)."""
    if beta - alpha <= 0.0:
        return 0.0
    root = np.sqrt((1.0 - alpha) / (1.0 - beta))
    return float(2.0 * ((root - 1.0) / (root + 1.0)) ** k)


def theta_upper_bounds(F: ArrayLike, k: int) -> ThetaBounds:
    """
    Upper bounds on theta_k = min over degree-k g with g(1) = 1 of ||g(F)||.

    The power bound ||F||^k is always present. The bound from the Hermitian
    part of E = I - F needs that part positive definite. Both Chebyshev forms
    need F symmetric with spectrum [alpha, beta], beta < 1.
    """
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    mat = as_dense(F, "F")
    size = mat.shape[0]
    if mat.shape != (size, size):
        raise ArgumentError(f"F must be square, got {mat.shape}")

    bounds = ThetaBounds(k=k, power=operator_norm(mat) ** k)

    e = np.eye(size) - mat
    e_hermitian = 0.5 * (e + e.T)
    nu = float(scipy.linalg.eigvalsh(e_hermitian)[0])
    if nu > 0.0:
        sigma = operator_norm(e)
        bounds.pd_hermitian_part = float(max(1.0 - (nu / sigma) ** 2, 0.0) ** (k / 2.0))

    if is_symmetric(mat):
        eigenvalues = scipy.linalg.eigvalsh(0.5 * (mat + mat.T))
        alpha, beta = float(eigenvalues[0]), float(eigenvalues[-1])
        if beta < 1.0:
            bounds.chebyshev = chebyshev_estimate(alpha, beta, k)
            bounds.chebyshev_exact = chebyshev_exact(alpha, beta, k)
        else:
            logger.debug(f"largest eigenvalue {beta:.3e} >= 1; no Chebyshev bound")

    return bounds
