"""Table display utilities for traces, comparisons and diagnostics."""

from typing import Optional, Sequence

from rich.console import Console
from rich.table import Table

from ..models.diagnostics import DiagnosticsReport, Severity
from ..models.trace import IterationTrace, NModeTrace, TerminationReason
from ..problems.registry import ProblemEntry

SEVERITY_STYLES = {
    Severity.CRITICAL: "red bold",
    Severity.WARNING: "yellow",
    Severity.INFO: "cyan",
}

TERMINATION_STYLES = {
    TerminationReason.CONVERGED: "green",
    TerminationReason.COMPLETED: "green",
    TerminationReason.MAX_CYCLES: "yellow",
}


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3e}"


def termination_text(reason: Optional[TerminationReason]) -> str:
    if reason is None:
        return "-"
    style = TERMINATION_STYLES.get(reason, "red")
    return f"[{style}]{reason.value}[/{style}]"


class TableDisplay:
    """Create and display formatted tables."""

    def __init__(self, console: Optional[Console] = None):
        self._console = console or Console()

    def cycle_table(self, trace: IterationTrace, title: str = "Cycles") -> Table:
        """One row per record, initial vector included."""
        table = Table(title=title, show_header=True, header_style="bold cyan")
        table.add_column("Cycle", justify="right")
        table.add_column("k", justify="right")
        table.add_column("Residual", justify="right")
        table.add_column("Error", justify="right")
        table.add_column("Sum |gamma|", justify="right")
        table.add_column("f evals", justify="right", style="dim")

        for record in trace.records:
            extrapolation = record.extrapolation
            table.add_row(
                str(record.cycle),
                "-" if record.k_used is None else str(record.k_used),
                _fmt(record.residual_norm),
                _fmt(record.error_norm),
                _fmt(extrapolation.gamma_abs_sum) if extrapolation else "-",
                str(record.f_evals),
            )
        return table

    def n_mode_table(self, trace: NModeTrace, title: str = "n-Mode") -> Table:
        table = Table(title=f"{title} (k={trace.k})", show_header=True, header_style="bold cyan")
        table.add_column("n", justify="right")
        table.add_column("||s_nk - s||", justify="right")
        table.add_column("||eps_n||", justify="right")
        table.add_column("Residual", justify="right")
        table.add_column("LSQ residual", justify="right", style="dim")

        for step in trace.steps:
            table.add_row(
                str(step.n),
                _fmt(step.error_norm),
                _fmt(step.iterate_error_norm),
                _fmt(step.residual_norm),
                _fmt(step.extrapolation.residual_norm),
            )
        return table

    def comparison_table(self, rows: Sequence[dict], title: str = "Comparison") -> Table:
        """Rows with keys leg, termination, f_evals, final_error, final_residual, message."""
        table = Table(title=title, show_header=True, header_style="bold cyan")
        table.add_column("Leg", style="cyan bold")
        table.add_column("Outcome")
        table.add_column("f evals", justify="right")
        table.add_column("Final error", justify="right")
        table.add_column("Final residual", justify="right")
        table.add_column("Note", style="dim")

        for row in rows:
            table.add_row(
                row["leg"],
                termination_text(row.get("termination")),
                str(row.get("f_evals", "-")),
                _fmt(row.get("final_error")),
                _fmt(row.get("final_residual")),
                row.get("message", ""),
            )
        return table

    def diagnostics_table(self, report: DiagnosticsReport) -> Table:
        table = Table(
            title=f"Diagnostics (F at {report.evaluated_at.replace('_', ' ')})",
            show_header=True,
            header_style="bold cyan",
        )
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", justify="right")

        table.add_row("||F||", _fmt(report.l_estimate))
        table.add_row("rho(F)", _fmt(report.spectral_radius))
        for bounds in report.theta_bounds:
            table.add_row(f"theta_{bounds.k} power", _fmt(bounds.power))
            table.add_row(f"theta_{bounds.k} hermitian part", _fmt(bounds.pd_hermitian_part))
            table.add_row(f"theta_{bounds.k} chebyshev", _fmt(bounds.chebyshev))
            table.add_row(f"theta_{bounds.k} chebyshev exact", _fmt(bounds.chebyshev_exact))
        table.add_row("min sigma_k(S(e_n))", _fmt(report.sigma_k_s_min))
        table.add_row("max sum |gamma|", _fmt(report.gamma_abs_sum_max))
        table.add_row("Delta", _fmt(report.delta))
        if report.perturbation is not None:
            table.add_row("||H||", _fmt(report.perturbation.h_norm))
            table.add_row("H bound", _fmt(report.perturbation.h_bound))
        return table

    def findings_table(self, report: DiagnosticsReport) -> Table:
        table = Table(title="Findings", show_header=True, header_style="bold cyan")
        table.add_column("Severity", width=10)
        table.add_column("Finding", style="bold")
        table.add_column("Description")

        for finding in report.findings:
            style = SEVERITY_STYLES.get(finding.severity, "white")
            table.add_row(
                f"[{style}]{finding.severity.value}[/{style}]",
                finding.title,
                finding.description,
            )
        return table

    def problems_table(self, entries: Sequence[ProblemEntry]) -> Table:
        table = Table(title="Problems", show_header=True, header_style="bold cyan")
        table.add_column("Name", style="cyan bold")
        table.add_column("Description")
        table.add_column("Parameters", style="dim")

        for entry in entries:
            table.add_row(entry.name, entry.description, ", ".join(entry.parameters) or "-")
        return table

    def show(self, table: Table) -> None:
        """Display a table."""
        self._console.print(table)
