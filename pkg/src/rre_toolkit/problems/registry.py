"""Problem registry addressable by name from the CLI and config files."""

import logging
from dataclasses import dataclass
from typing import Any, Callable

from ..errors import ArgumentError, UnknownProblemError
from ..models.problem import ProblemSpec
from .classic import make_boundary, make_coupled2d, make_cos, make_identity
from .linear import make_linear, make_quadratic_perturbed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemEntry:
    """A named problem constructor and the parameters it accepts."""

    name: str
    description: str
    builder: Callable[..., ProblemSpec]
    parameters: tuple[str, ...] = ()


PROBLEM_REGISTRY: dict[str, ProblemEntry] = {
    entry.name: entry
    for entry in (
        ProblemEntry(
            "linear",
            "f(x) = T x + d with T built from a spectrum",
            make_linear,
            ("spectrum", "dimension", "transform", "seed"),
        ),
        ProblemEntry(
            "quadratic",
            "f(x) = T x + q x*x with s = 0 and F(s) = T",
            make_quadratic_perturbed,
            ("spectrum", "q_strength", "dimension", "transform", "seed"),
        ),
        ProblemEntry("cos", "scalar map x = cos(x)", make_cos),
        ProblemEntry(
            "coupled2d", "2-D coupled contraction x_i = (x_j^2 + 1)/4 + 0.3 x_i", make_coupled2d
        ),
        ProblemEntry(
            "boundary",
            "Picard form of -u'' = 1 + lambda (exp(u) - 1) on a uniform grid",
            make_boundary,
            ("dimension", "nonlinearity"),
        ),
        ProblemEntry(
            "identity", "f(x) = x, non-contractive, no stored solution", make_identity, ("dimension",)
        ),
    )
}

REQUIRED_PARAMETERS = {
    "linear": ("spectrum",),
    "quadratic": ("spectrum", "q_strength"),
}


def list_problems() -> list[ProblemEntry]:
    """Registered problems sorted by name."""
    return [PROBLEM_REGISTRY[name] for name in sorted(PROBLEM_REGISTRY)]


def build_problem(name: str, **params: Any) -> ProblemSpec:
    """
    Construct a registered problem.

    None-valued parameters are dropped so config sections can pass every
    field. Parameters the problem does not accept are rejected.

    Raises:
        UnknownProblemError: For an unregistered name
        ArgumentError: For unsupported or missing parameters
    """
    entry = PROBLEM_REGISTRY.get(name)
    if entry is None:
        raise UnknownProblemError(
            f"unknown problem '{name}'; available: {', '.join(sorted(PROBLEM_REGISTRY))}"
        )

    given = {key: value for key, value in params.items() if value is not None}
    unsupported = sorted(set(given) - set(entry.parameters))
    if unsupported:
        raise ArgumentError(f"problem '{name}' does not accept: {', '.join(unsupported)}")
    missing = [key for key in REQUIRED_PARAMETERS.get(name, ()) if key not in given]
    if missing:
        raise ArgumentError(f"problem '{name}' requires: {', '.join(missing)}")

    logger.info(f"Building problem '{name}' with {given}")
    return entry.builder(**given)


CLASSIC_NONLINEAR = ("cos", "coupled2d", "boundary")


def make_classic_nonlinear(name: str, **params: Any) -> ProblemSpec:
    """Build one of the nonlinear benchmarks: cos, coupled2d or boundary."""
    if name not in CLASSIC_NONLINEAR:
        raise UnknownProblemError(
            f"'{name}' is not a classic nonlinear problem; expected one of {CLASSIC_NONLINEAR}"
        )
    return build_problem(name, **params)
