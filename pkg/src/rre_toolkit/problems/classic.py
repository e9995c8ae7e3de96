"""Desk-scale nonlinear fixed-point benchmarks with precomputed solutions."""

import logging

import numpy as np
import scipy.linalg
import scipy.optimize

from ..errors import ArgumentError, NumericalFailureError
from ..models.problem import FixedPointProblem, ProblemSpec

logger = logging.getLogger(__name__)


def _plain_iterates(f, x0: np.ndarray, count: int) -> np.ndarray:
    x = x0
    for _ in range(count):
        x = f(x)
    return x


def make_cos() -> ProblemSpec:
    """x = cos(x); s is the Dottie number."""
    start = float(_plain_iterates(np.cos, np.array([1.0]), 200)[0])
    root = scipy.optimize.brentq(
        lambda t: np.cos(t) - t, start - 0.01, start + 0.01, xtol=1e-15, rtol=4 * np.finfo(float).eps
    )
    logger.debug(f"cos map: 200 iterations reach {start:.15f}, polished to {root:.15f}")

    problem = FixedPointProblem(
        dimension=1,
        f=np.cos,
        jacobian=lambda x: np.array([[-np.sin(x[0])]]),
        solution=np.array([root]),
        name="cos",
    )
    return ProblemSpec(
        name="cos",
        problem=problem,
        provenance="200 plain iterations from 1.0 + brentq polish",
        jacobian_at_solution=problem.jacobian(problem.solution),
    )


def _coupled2d(x: np.ndarray) -> np.ndarray:
    return np.array(
        [(x[1] ** 2 + 1.0) / 4.0 + 0.3 * x[0], (x[0] ** 2 + 1.0) / 4.0 + 0.3 * x[1]]
    )


def _coupled2d_jacobian(x: np.ndarray) -> np.ndarray:
    return np.array([[0.3, 0.5 * x[1]], [0.5 * x[0], 0.3]])


def make_coupled2d() -> ProblemSpec:
    """x1 = (x2^2 + 1)/4 + 0.3 x1, x2 = (x1^2 + 1)/4 + 0.3 x2."""
    start = _plain_iterates(_coupled2d, np.zeros(2), 500)
    polished = scipy.optimize.root(
        lambda x: _coupled2d(x) - x,
        start,
        jac=lambda x: _coupled2d_jacobian(x) - np.eye(2),
        method="hybr",
        options={"xtol": 1e-15},
    )
    if not polished.success:
        raise NumericalFailureError(f"coupled2d polish failed: {polished.message}")

    problem = FixedPointProblem(
        dimension=2,
        f=_coupled2d,
        jacobian=_coupled2d_jacobian,
        solution=polished.x,
        name="coupled2d",
    )
    problem.verify_solution(rel_tol=1e-13)
    return ProblemSpec(
        name="coupled2d",
        problem=problem,
        provenance="500 plain iterations from 0 + hybrid Powell polish",
        jacobian_at_solution=_coupled2d_jacobian(polished.x),
    )


def make_boundary(dimension: int = 32, nonlinearity: float = 3.0) -> ProblemSpec:
    """
    Picard form of -u'' = 1 + lambda (exp(u) - 1) on (0, 1), u(0) = u(1) = 0.

    Second-order finite differences on `dimension` interior points give
    f(u) = A^{-1} (1 + lambda (exp(u) - 1)) with A = tridiag(-1, 2, -1) / h^2.
    lambda = 0 reduces to the linear solve A u = 1.
    """
    if dimension < 1:
        raise ArgumentError(f"dimension must be >= 1, got {dimension}")
    lam = float(nonlinearity)
    h = 1.0 / (dimension + 1)
    a = (
        2.0 * np.eye(dimension) - np.eye(dimension, k=1) - np.eye(dimension, k=-1)
    ) / h**2
    factor = scipy.linalg.cho_factor(a)
    ones = np.ones(dimension)

    def f(u: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(factor, ones + lam * np.expm1(u))

    def jacobian(u: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(factor, lam * np.diag(np.exp(u)))

    if lam == 0.0:
        solution = scipy.linalg.cho_solve(factor, ones)
        provenance = "linear solve A u = 1"
    else:
        start = _plain_iterates(f, np.zeros(dimension), 500)
        polished = scipy.optimize.root(
            lambda u: f(u) - u,
            start,
            jac=lambda u: jacobian(u) - np.eye(dimension),
            method="hybr",
            options={"xtol": 1e-15},
        )
        if not polished.success:
            raise NumericalFailureError(f"boundary polish failed: {polished.message}")
        solution = polished.x
        provenance = "500 plain iterations from 0 + hybrid Powell polish"

    problem = FixedPointProblem(
        dimension=dimension, f=f, jacobian=jacobian, solution=solution, name="boundary"
    )
    return ProblemSpec(
        name="boundary",
        problem=problem,
        provenance=provenance,
        params={"dimension": dimension, "nonlinearity": lam},
        jacobian_at_solution=jacobian(solution),
    )


def make_identity(dimension: int = 2) -> ProblemSpec:
    """f(x) = x; every point is fixed, so no solution is stored."""
    if dimension < 1:
        raise ArgumentError(f"dimension must be >= 1, got {dimension}")
    problem = FixedPointProblem(
        dimension=dimension,
        f=lambda x: np.array(x, dtype=np.float64),
        jacobian=lambda x: np.eye(dimension),
        name="identity",
    )
    return ProblemSpec(
        name="identity",
        problem=problem,
        provenance="every vector is a fixed point",
        params={"dimension": dimension},
        contractive=False,
    )
