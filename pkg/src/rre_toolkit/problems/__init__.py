"""Built-in fixed-point test problems."""

from .classic import make_boundary, make_coupled2d, make_cos, make_identity
from .linear import build_matrix, expand_spectrum, make_linear, make_quadratic_perturbed
from .registry import (
    PROBLEM_REGISTRY,
    ProblemEntry,
    build_problem,
    list_problems,
    make_classic_nonlinear,
)

__all__ = [
    "PROBLEM_REGISTRY",
    "ProblemEntry",
    "build_matrix",
    "build_problem",
    "expand_spectrum",
    "list_problems",
    "make_boundary",
    "make_classic_nonlinear",
    "make_coupled2d",
    "make_cos",
    "make_identity",
    "make_linear",
    "make_quadratic_perturbed",
]
