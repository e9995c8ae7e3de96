"""Artifact output."""

from .artifacts import TRACE_COLUMNS, ArtifactWriter, comparison_frame, sanitize, trace_frame

__all__ = ["TRACE_COLUMNS", "ArtifactWriter", "comparison_frame", "sanitize", "trace_frame"]
