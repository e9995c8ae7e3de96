"""Tests for CSV and JSON artifacts."""

import json
import math

import numpy as np
import pandas as pd

from rre_toolkit.models import IterationTrace, ModeConfig, ModeKind
from rre_toolkit.modes import run_c_mode, run_n_mode
from rre_toolkit.storage import TRACE_COLUMNS, ArtifactWriter, comparison_frame, sanitize, trace_frame


def test_sanitize_plain_types():
    payload = {"a": np.float64(1.5), "b": [np.int64(2), math.nan], "c": np.array([1.0, np.inf])}
    assert sanitize(payload) == {"a": 1.5, "b": [2, None], "c": [1.0, None]}


def test_cycle_trace_frame(linear_two_point):
    config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-15, max_cycles=3)
    trace = run_c_mode(linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0))
    frame = trace_frame(trace)
    assert list(frame.columns) == TRACE_COLUMNS
    assert frame["index"].tolist() == [1, 2, 3]
    assert frame["k_used"].tolist() == [1, 1, 1]
    assert (frame["gamma_abs_sum"] >= 1.0).all()


def test_n_mode_trace_frame(linear_two_point):
    trace = run_n_mode(linear_two_point.problem, linear_two_point.initial_vector(0, 1.0), k=1, n_max=2)
    frame = trace_frame(trace)
    assert frame["index"].tolist() == [0, 1, 2]


def test_empty_trace_frame():
    frame = trace_frame(IterationTrace())
    assert frame.empty
    assert list(frame.columns) == TRACE_COLUMNS


def test_comparison_frame_aligns_on_evaluations():
    frame = comparison_frame(
        {"plain": [(1, 1.0), (2, 0.5), (3, 0.25)], "mc": [(1, 1.0), (3, 1e-3)]}, "error_norm"
    )
    assert list(frame.columns) == ["f_evals", "plain_error_norm", "mc_error_norm"]
    assert frame["f_evals"].tolist() == [1, 2, 3]
    assert math.isnan(frame.loc[1, "mc_error_norm"])
    assert frame.loc[2, "mc_error_norm"] == 1e-3


def test_comparison_frame_without_points():
    frame = comparison_frame({"plain": []}, "residual_norm")
    assert list(frame.columns) == ["f_evals", "plain_residual_norm"]


def test_writer_outputs(tmp_path, linear_two_point):
    writer = ArtifactWriter(tmp_path / "out", prefix="case")
    config = ModeConfig(mode=ModeKind.C_MODE, k=2)
    trace = run_c_mode(linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0))

    csv_path = writer.write_trace_csv(trace)
    assert csv_path.name == "case_trace.csv"
    assert b"\r\n" not in csv_path.read_bytes()
    assert len(pd.read_csv(csv_path)) == 1

    json_path = writer.write_json({"z": 1, "a": float("nan")})
    assert json_path.name == "case_report.json"
    text = json_path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"z"')
    assert json.loads(text) == {"a": None, "z": 1}
