"""CSV and JSON artifacts of runs, comparisons and diagnostics."""

import json
import logging
import math
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..models.trace import IterationTrace, NModeTrace

logger = logging.getLogger(__name__)

TRACE_COLUMNS = [
    "index",
    "residual_norm",
    "error_norm",
    "k_used",
    "gamma_abs_sum",
    "extrapolation_residual",
]


def sanitize(value: Any) -> Any:
    """Recursively convert to plain JSON types with non-finite floats as None."""
    if isinstance(value, Mapping):
        return {str(key): sanitize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(item) for item in value]
    if isinstance(value, np.ndarray):
        return [sanitize(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, Path):
        return value.as_posix()
    return value


def trace_frame(trace: Union[IterationTrace, NModeTrace]) -> pd.DataFrame:
    """
    One row per cycle (or per n in n-Mode) with the fixed trace columns.

    The initial vector of a cycling trace is not a row.
    """
    rows: list[dict[str, Any]] = []
    if isinstance(trace, NModeTrace):
        for step in trace.steps:
            rows.append(
                {
                    "index": step.n,
                    "residual_norm": step.residual_norm,
                    "error_norm": step.error_norm,
                    "k_used": trace.k,
                    "gamma_abs_sum": step.extrapolation.gamma_abs_sum,
                    "extrapolation_residual": step.extrapolation.residual_norm,
                }
            )
    else:
        for record in trace.cycle_records:
            extrapolation = record.extrapolation
            rows.append(
                {
                    "index": record.cycle,
                    "residual_norm": record.residual_norm,
                    "error_norm": record.error_norm,
                    "k_used": record.k_used,
                    "gamma_abs_sum": extrapolation.gamma_abs_sum if extrapolation else None,
                    "extrapolation_residual": extrapolation.residual_norm if extrapolation else None,
                }
            )

    frame = pd.DataFrame(rows, columns=TRACE_COLUMNS)
    float_columns = ["residual_norm", "error_norm", "gamma_abs_sum", "extrapolation_residual"]
    frame[float_columns] = frame[float_columns].astype("float64").replace([np.inf, -np.inf], np.nan)
    frame["index"] = frame["index"].astype("Int64")
    frame["k_used"] = frame["k_used"].astype("Int64")
    return frame


def comparison_frame(
    legs: Mapping[str, Sequence[tuple[int, Optional[float]]]], metric: str
) -> pd.DataFrame:
    """
    Wide table of a metric against cumulative f-evaluations, one column per leg.

    Args:
        legs: Leg name to (f_evals, value) pairs, in output column order
        metric: Column suffix, e.g. error_norm
    """
    columns = [f"{leg}_{metric}" for leg in legs]
    long_rows = [
        {"f_evals": f_evals, "leg": f"{leg}_{metric}", "value": value}
        for leg, points in legs.items()
        for f_evals, value in points
    ]
    if not long_rows:
        return pd.DataFrame(columns=["f_evals", *columns])

    long_frame = pd.DataFrame(long_rows)
    long_frame["value"] = long_frame["value"].astype("float64").replace([np.inf, -np.inf], np.nan)
    wide = (
        long_frame.drop_duplicates(subset=["f_evals", "leg"], keep="last")
        .pivot(index="f_evals", columns="leg", values="value")
        .reindex(columns=columns)
        .sort_index()
        .reset_index()
    )
    wide.columns.name = None
    return wide


class ArtifactWriter:
    """Writes artifacts under one directory with a common file prefix."""

    def __init__(self, out_dir: Path, prefix: str = "run"):
        """
        Args:
            out_dir: Target directory, created on first write
            prefix: File name prefix
        """
        self._out_dir = Path(out_dir)
        self._prefix = prefix

    @property
    def out_dir(self) -> Path:
        return self._out_dir

    def path(self, suffix: str) -> Path:
        return self._out_dir / f"{self._prefix}_{suffix}"

    def _write_frame(self, frame: pd.DataFrame, suffix: str) -> Path:
        self._out_dir.mkdir(parents=True, exist_ok=True)
        target = self.path(suffix)
        frame.to_csv(target, index=False, lineterminator="\n", encoding="utf-8", na_rep="")
        logger.info(f"Wrote {len(frame)} rows to {target}")
        return target

    def write_trace_csv(self, trace: Union[IterationTrace, NModeTrace]) -> Path:
        return self._write_frame(trace_frame(trace), "trace.csv")

    def write_comparison_csv(
        self, legs: Mapping[str, Sequence[tuple[int, Optional[float]]]], metric: str
    ) -> Path:
        return self._write_frame(comparison_frame(legs, metric), "compare.csv")

    def write_json(self, payload: Mapping[str, Any], suffix: str = "report.json") -> Path:
        """Sorted keys, two-space indent, non-finite numbers as null."""
        self._out_dir.mkdir(parents=True, exist_ok=True)
        target = self.path(suffix)
        text = json.dumps(sanitize(payload), sort_keys=True, indent=2, allow_nan=False)
        with open(target, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text + "\n")
        logger.info(f"Wrote JSON report to {target}")
        return target
