"""
Run configuration: a YAML file with one section per concern, validated by
pydantic and reported with the line of the offending key.

Example::

    seed: 3
    problem:
      name: linear
      spectrum: [0.2, 0.8]
    mode:
      mode: mc
      tol: 1.0e-12
    output:
      dir: rre-out
"""

import logging
from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, field_validator

from .errors import ArgumentError, ConfigError
from .models.problem import ProblemSpec
from .models.trace import ModeConfig
from .problems.registry import PROBLEM_REGISTRY, build_problem

logger = logging.getLogger(__name__)

LegName = Literal["plain", "n", "c", "mc"]


class ProblemSection(BaseModel):
    """Which problem to build and where to start."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(default="cos", description="Registered problem name")
    dimension: Optional[int] = Field(default=None, ge=1)
    spectrum: Optional[list[float]] = Field(default=None)
    transform: Optional[Literal["diagonal", "orthogonal", "similarity"]] = Field(default=None)
    q_strength: Optional[float] = Field(default=None)
    nonlinearity: Optional[float] = Field(default=None)
    start_radius: float = Field(default=0.5, gt=0.0, description="||x0 - s|| for seeded starts")
    x0: Optional[list[float]] = Field(default=None, description="Explicit initial vector")
    hide_solution: bool = Field(default=False, description="Drop the stored solution")

    @field_validator("name")
    @classmethod
    def _registered(cls, value: str) -> str:
        if value not in PROBLEM_REGISTRY:
            raise ValueError(
                f"unknown problem '{value}'; available: {', '.join(sorted(PROBLEM_REGISTRY))}"
            )
        return value


class DiagnosticsSection(BaseModel):
    """What the diagnostics layer computes."""

    model_config = ConfigDict(extra="forbid")

    enabled: bool = Field(default=False, description="Attach per-cycle monitors and a report")
    k_values: list[int] = Field(default_factory=lambda: [1, 2])
    perturbation: bool = Field(default=False, description="Companion-sequence quantities")
    perturbation_k: int = Field(default=1, ge=1)

    @field_validator("k_values")
    @classmethod
    def _positive(cls, value: list[int]) -> list[int]:
        if any(k < 1 for k in value):
            raise ValueError("every k must be >= 1")
        return value


class CompareSection(BaseModel):
    """Legs of the side-by-side comparison."""

    model_config = ConfigDict(extra="forbid")

    legs: list[LegName] = Field(default_factory=lambda: ["plain", "n", "c", "mc"])
    plain_max_iterations: int = Field(default=500, ge=1)


class OutputSection(BaseModel):
    """Artifact location."""

    model_config = ConfigDict(extra="forbid")

    dir: Path = Field(default=Path("rre-out"))
    prefix: str = Field(default="run", min_length=1)


class RunConfig(BaseModel):
    """Complete configuration of one CLI invocation."""

    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0)
    problem: ProblemSection = Field(default_factory=ProblemSection)
    mode: ModeConfig = Field(default_factory=ModeConfig)
    diagnostics: DiagnosticsSection = Field(default_factory=DiagnosticsSection)
    compare: CompareSection = Field(default_factory=CompareSection)
    output: OutputSection = Field(default_factory=OutputSection)

    _lines: dict[tuple[str, ...], int] = PrivateAttr(default_factory=dict)

    def line_of(self, *path: str) -> Optional[int]:
        """Source line of a key, walking up to the nearest known parent."""
        key = tuple(path)
        while key:
            if key in self._lines:
                return self._lines[key]
            key = key[:-1]
        return None

    def build_problem(self) -> ProblemSpec:
        """
        Construct the configured problem.

        Raises:
            ConfigError: If the problem rejects its parameters or x0 does not fit
        """
        section = self.problem
        entry = PROBLEM_REGISTRY[section.name]
        params: dict[str, Any] = {
            "dimension": section.dimension,
            "spectrum": section.spectrum,
            "transform": section.transform,
            "q_strength": section.q_strength,
            "nonlinearity": section.nonlinearity,
        }
        if "seed" in entry.parameters:
            params["seed"] = self.seed
        try:
            spec = build_problem(section.name, **params)
        except ArgumentError as exc:
            raise ConfigError(str(exc), self.line_of("problem")) from exc

        if section.x0 is not None and len(section.x0) != spec.dimension:
            raise ConfigError(
                f"x0 has length {len(section.x0)}, problem '{section.name}' has dimension {spec.dimension}",
                self.line_of("problem", "x0"),
            )
        return spec.without_solution() if section.hide_solution else spec

    def initial_vector(self, spec: ProblemSpec) -> np.ndarray:
        """Explicit x0 or a seeded start at distance start_radius."""
        if self.problem.x0 is not None:
            return np.asarray(self.problem.x0, dtype=np.float64)
        return spec.initial_vector(self.seed, self.problem.start_radius)


def _collect_lines(node: Any, path: tuple[str, ...], lines: dict[tuple[str, ...], int]) -> None:
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = path + (str(key_node.value),)
            lines[key] = key_node.start_mark.line + 1
            _collect_lines(value_node, key, lines)
    elif isinstance(node, yaml.SequenceNode):
        for index, item in enumerate(node.value):
            key = path + (str(index),)
            lines[key] = item.start_mark.line + 1
            _collect_lines(item, key, lines)


def _validation_error(exc: ValidationError, lines: dict[tuple[str, ...], int]) -> ConfigError:
    first = exc.errors()[0]
    path = tuple(str(part) for part in first["loc"])
    line = None
    key = path
    while key:
        if key in lines:
            line = lines[key]
            break
        key = key[:-1]
    where = ".".join(path) or "config"
    return ConfigError(f"{where}: {first['msg']}", line)


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate YAML configuration text.

    Raises:
        ConfigError: With the line number of the offending key where known
    """
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"invalid YAML: {problem}", line) from exc

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping of sections", 1)

    lines: dict[tuple[str, ...], int] = {}
    if root is not None:
        _collect_lines(root, (), lines)

    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise _validation_error(exc, lines) from exc
    config._lines = lines
    return config


def load_config(path: Optional[Path]) -> RunConfig:
    """Read a config file; no path gives the defaults."""
    if path is None:
        return RunConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    logger.info(f"Loaded configuration from {path}")
    return parse_config(text)


def apply_overrides(config: RunConfig, **overrides: Any) -> RunConfig:
    """
    Apply command-line flags on top of a loaded config.

    Recognized keys: mode, n, k, tol, max_cycles, seed, out. None means "not given".

    Raises:
        ConfigError: If an override violates a constraint
    """
    given = {key: value for key, value in overrides.items() if value is not None}
    mode_updates = {
        key: given[key] for key in ("mode", "n", "k", "tol", "max_cycles") if key in given
    }
    try:
        mode = ModeConfig.model_validate({**config.mode.model_dump(), **mode_updates})
    except ValidationError as exc:
        first = exc.errors()[0]
        flag = "--" + str(first["loc"][0]).replace("_", "-") if first["loc"] else "flag"
        raise ConfigError(f"{flag}: {first['msg']}") from exc

    updated = config.model_copy(update={"mode": mode})
    if "seed" in given:
        if given["seed"] < 0:
            raise ConfigError("--seed: must be >= 0")
        updated = updated.model_copy(update={"seed": given["seed"]})
    if "out" in given:
        output = config.output.model_copy(update={"dir": Path(given["out"])})
        updated = updated.model_copy(update={"output": output})
    updated._lines = dict(config._lines)
    return updated
