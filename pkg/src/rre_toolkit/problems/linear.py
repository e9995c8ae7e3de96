"""Linear problems f(x) = T x + d and the quadratic perturbation f(x) = T x + q x*x."""

import logging
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from ..errors import ArgumentError, ContractionError
from ..linalg.core import as_vector, operator_norm
from ..models.problem import FixedPointProblem, ProblemSpec

logger = logging.getLogger(__name__)

TRANSFORMS = ("diagonal", "orthogonal", "similarity")
DEGREE_ROUNDING = 12


def _orthogonal(rng: np.random.Generator, size: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((size, size)))
    return q * np.sign(np.diag(r))


def expand_spectrum(spectrum: Sequence[float], dimension: Optional[int] = None) -> np.ndarray:
    """Repeat the spectrum cyclically to the requested dimension."""
    values = as_vector(np.atleast_1d(np.asarray(spectrum, dtype=np.float64)), "spectrum")
    if values.size == 0:
        raise ArgumentError("spectrum must not be empty")
    size = values.size if dimension is None else dimension
    if size < values.size:
        raise ArgumentError(f"dimension {size} is smaller than the spectrum length {values.size}")
    if np.any(np.abs(values) >= 1.0):
        raise ArgumentError(f"all eigenvalues must satisfy |lambda| < 1, got {values.tolist()}")
    return np.resize(values, size)


def build_matrix(eigenvalues: np.ndarray, transform: str, rng: np.random.Generator) -> np.ndarray:
    """
    T with the given eigenvalues.

    diagonal keeps diag(lambda); orthogonal uses Q diag Q^T; similarity uses
    V diag V^{-1} with V of condition number at most 2.
    """
    size = eigenvalues.size
    diag = np.diag(eigenvalues)
    if transform == "diagonal":
        return diag
    if transform == "orthogonal":
        q = _orthogonal(rng, size)
        return q @ diag @ q.T
    if transform == "similarity":
        v = _orthogonal(rng, size) @ np.diag(np.linspace(1.0, 2.0, size)) @ _orthogonal(rng, size).T
        return v @ diag @ scipy.linalg.inv(v)
    raise ArgumentError(f"unknown transform '{transform}', expected one of {TRANSFORMS}")


def distinct_count(eigenvalues: np.ndarray) -> int:
    return int(np.unique(np.round(eigenvalues, DEGREE_ROUNDING)).size)


def make_linear(
    spectrum: Sequence[float],
    dimension: Optional[int] = None,
    transform: str = "diagonal",
    d: Optional[ArrayLike] = None,
    seed: int = 0,
) -> ProblemSpec:
    """
    f(x) = T x + d with s = (I - T)^{-1} d.

    Args:
        spectrum: Eigenvalues of T, repeated cyclically up to dimension
        dimension: N (defaults to the spectrum length)
        transform: diagonal, orthogonal or similarity
        d: Constant term (seeded standard normal by default)
        seed: Seed for the transform and d

    Raises:
        ArgumentError: If an eigenvalue has modulus >= 1
    """
    eigenvalues = expand_spectrum(spectrum, dimension)
    size = eigenvalues.size
    rng = np.random.default_rng(seed)
    t = build_matrix(eigenvalues, transform, rng)
    offset = rng.standard_normal(size) if d is None else as_vector(d, "d")
    if offset.shape != (size,):
        raise ArgumentError(f"d has length {offset.shape[0]}, expected {size}")

    solution = scipy.linalg.solve(np.eye(size) - t, offset)
    problem = FixedPointProblem(
        dimension=size,
        f=lambda x: t @ x + offset,
        jacobian=lambda x: t,
        solution=solution,
        name="linear",
    )
    return ProblemSpec(
        name="linear",
        problem=problem,
        provenance="direct solve of (I - T) s = d",
        params={"spectrum": eigenvalues.tolist(), "transform": transform, "seed": seed},
        jacobian_at_solution=t,
        expected_degree=distinct_count(eigenvalues),
    )


def make_quadratic_perturbed(
    spectrum: Sequence[float],
    q_strength: float,
    dimension: Optional[int] = None,
    transform: str = "diagonal",
    seed: int = 0,
    contraction_radius: float = 1.0,
    samples: int = 64,
) -> ProblemSpec:
    """
    f(x) = T x + q (x * x) with s = 0 and F(s) = T.

    The Jacobian T + 2q diag(x) is checked on seeded points of the ball of
    radius contraction_radius around 0 (plus the center).

    Raises:
        ContractionError: If ||F(x)|| >= 1 at a sampled point
    """
    eigenvalues = expand_spectrum(spectrum, dimension)
    size = eigenvalues.size
    rng = np.random.default_rng(seed)
    t = build_matrix(eigenvalues, transform, rng)
    q = float(q_strength)

    def jacobian(x: np.ndarray) -> np.ndarray:
        return t + 2.0 * q * np.diag(x)

    directions = rng.standard_normal((samples, size))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = contraction_radius * rng.uniform(0.0, 1.0, samples) ** (1.0 / size)
    points = np.vstack([np.zeros(size), directions * radii[:, None]])
    worst = max(operator_norm(jacobian(p)) for p in points)
    if worst >= 1.0:
        raise ContractionError(
            f"||F(x)|| reaches {worst:.4f} on the ball of radius {contraction_radius}; "
            "reduce q_strength or the spectrum"
        )
    logger.debug(f"quadratic problem: max sampled ||F(x)|| = {worst:.4f}")

    problem = FixedPointProblem(
        dimension=size,
        f=lambda x: t @ x + q * x * x,
        jacobian=jacobian,
        solution=np.zeros(size),
        name="quadratic",
    )
    return ProblemSpec(
        name="quadratic",
        problem=problem,
        provenance="s = 0 by construction",
        params={
            "spectrum": eigenvalues.tolist(),
            "q_strength": q,
            "transform": transform,
            "seed": seed,
            "contraction_radius": contraction_radius,
        },
        jacobian_at_solution=t,
        expected_degree=distinct_count(eigenvalues) if q == 0.0 else None,
    )
