"""Pytest fixtures for RRE toolkit tests."""

import numpy as np
import pytest

from rre_toolkit.models.problem import FixedPointProblem
from rre_toolkit.problems import make_cos, make_coupled2d, make_linear, make_quadratic_perturbed


@pytest.fixture
def rng():
    """Seeded generator for random instances."""
    return np.random.default_rng(20240611)


@pytest.fixture
def linear_two_point():
    """Diagonal linear problem with spectrum {0.2, 0.8}."""
    return make_linear([0.2, 0.8], transform="diagonal", seed=0)


@pytest.fixture
def symmetric_linear():
    """Symmetric linear problem, N = 10, spectrum in [0.2, 0.8] with five distinct values."""
    return make_linear([0.2, 0.35, 0.5, 0.65, 0.8], dimension=10, transform="orthogonal", seed=4)


@pytest.fixture
def scalar_quadratic():
    """f(x) = 0.5 x + 0.1 x^2 with s = 0."""
    return make_quadratic_perturbed([0.5], q_strength=0.1)


@pytest.fixture
def quadratic_four():
    """N = 4 quadratic perturbation of a diagonal T with ||T|| = 0.6."""
    return make_quadratic_perturbed([0.6, 0.2, -0.2, -0.6], q_strength=0.05)


@pytest.fixture
def cos_problem():
    return make_cos()


@pytest.fixture
def coupled_problem():
    return make_coupled2d()


@pytest.fixture
def halving_problem():
    """Scalar f(x) = 0.5 x."""
    return FixedPointProblem(dimension=1, f=lambda x: 0.5 * x, solution=np.zeros(1), name="halving")


def linear_map(t, d, solution=None):
    """FixedPointProblem for f(x) = T x + d with analytic Jacobian."""
    t = np.asarray(t, dtype=float)
    d = np.asarray(d, dtype=float)
    if solution is None:
        solution = np.linalg.solve(np.eye(t.shape[0]) - t, d)
    return FixedPointProblem(
        dimension=t.shape[0],
        f=lambda x: t @ x + d,
        jacobian=lambda x: t,
        solution=solution,
        name="linear-map",
    )


@pytest.fixture
def make_linear_map():
    """Factory for ad-hoc linear maps."""
    return linear_map
