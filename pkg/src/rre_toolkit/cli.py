"""RRE Toolkit CLI application."""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import typer
from rich.console import Console

from .config import RunConfig, apply_overrides, load_config
from .diagnostics.report import CycleMonitor, build_report
from .display.console import configure_logging
from .display.console import console as display_console
from .display.tables import TableDisplay
from .errors import (
    ArgumentError,
    ConfigError,
    RreToolkitError,
    RunAbortedError,
    UnsupportedDiagnosticError,
)
from .models.diagnostics import DiagnosticsReport
from .models.problem import ProblemSpec
from .models.trace import (
    CycleTrace,
    IterationTrace,
    ModeConfig,
    ModeKind,
    NModeTrace,
    TerminationReason,
)
from .modes.cycling import run_c_mode, run_mc_mode
from .modes.iteration import plain_iteration
from .modes.n_mode import run_n_mode
from .modes.runner import run_mode
from .problems.registry import list_problems
from .storage.artifacts import ArtifactWriter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_MAX_CYCLES = 2
EXIT_FAILURE = 3

AnyTrace = Union[IterationTrace, NModeTrace]

app = typer.Typer(
    name="rre-toolkit",
    help="Reduced Rank Extrapolation for fixed-point iterations - run, compare and diagnose",
    no_args_is_help=True,
)

_table_display = TableDisplay(Console())


@app.callback()
def main() -> None:
    """Install logging before any command runs."""
    configure_logging()


def exit_code_for(termination: Optional[TerminationReason]) -> int:
    """0 on convergence, 2 on the cycle cap, 3 on any failure."""
    if termination in (TerminationReason.CONVERGED, TerminationReason.COMPLETED):
        return EXIT_OK
    if termination == TerminationReason.MAX_CYCLES:
        return EXIT_MAX_CYCLES
    return EXIT_FAILURE


def _prepare(
    config_path: Optional[Path], **overrides: Any
) -> tuple[RunConfig, ProblemSpec, np.ndarray]:
    """Load config, apply flags and build the problem; config errors exit with 1."""
    try:
        cfg = apply_overrides(load_config(config_path), **overrides)
        spec = cfg.build_problem()
        return cfg, spec, cfg.initial_vector(spec)
    except ConfigError as exc:
        display_console.error(str(exc))
        raise typer.Exit(EXIT_CONFIG)


def _problem_summary(spec: ProblemSpec) -> dict[str, Any]:
    return {
        "name": spec.name,
        "dimension": spec.dimension,
        "provenance": spec.provenance,
        "params": spec.params,
        "has_solution": spec.solution is not None,
        "expected_degree": spec.expected_degree,
        "contractive": spec.contractive,
    }


def _trace_kind(trace: Optional[AnyTrace]) -> Optional[str]:
    if trace is None:
        return None
    if isinstance(trace, NModeTrace):
        return "n_mode"
    if isinstance(trace, CycleTrace):
        return "cycle"
    return "plain"


def _show_trace(trace: Optional[AnyTrace]) -> None:
    if isinstance(trace, NModeTrace):
        _table_display.show(_table_display.n_mode_table(trace))
    elif trace is not None:
        _table_display.show(_table_display.cycle_table(trace))


def _show_report(report: DiagnosticsReport) -> None:
    _table_display.show(_table_display.diagnostics_table(report))
    if report.findings:
        _table_display.show(_table_display.findings_table(report))


config_option = typer.Option(None, "--config", "-c", help="YAML run configuration")
mode_option = typer.Option(None, "--mode", "-m", help="Usage mode: n, c or mc")
n_option = typer.Option(None, "--n", help="Window base index n")
k_option = typer.Option(None, "--k", help="Extrapolation order k")
tol_option = typer.Option(None, "--tol", help="Residual tolerance")
max_cycles_option = typer.Option(None, "--max-cycles", help="Cycle cap (n_max in n-Mode)")
seed_option = typer.Option(None, "--seed", help="Seed for problem construction and x0")
out_option = typer.Option(None, "--out", "-o", help="Output directory")


# ============ Main Commands ============

@app.command()
def run(
    config: Optional[Path] = config_option,
    mode: Optional[ModeKind] = mode_option,
    n: Optional[int] = n_option,
    k: Optional[int] = k_option,
    tol: Optional[float] = tol_option,
    max_cycles: Optional[int] = max_cycles_option,
    seed: Optional[int] = seed_option,
    out: Optional[Path] = out_option,
):
    """Run one driver and write the trace CSV and JSON report."""
    cfg, spec, x0 = _prepare(
        config, mode=mode, n=n, k=k, tol=tol, max_cycles=max_cycles, seed=seed, out=out
    )
    problem = spec.problem
    monitor = CycleMonitor(problem, cfg.mode.rank_tol) if cfg.diagnostics.enabled else None

    display_console.header(
        f"{cfg.mode.mode.value}-mode on '{spec.name}'", f"N = {spec.dimension}, {spec.provenance}"
    )

    trace: Optional[AnyTrace] = None
    message = ""
    try:
        trace = run_mode(problem, cfg.mode, x0, on_cycle=monitor)
        code = exit_code_for(trace.termination)
    except RunAbortedError as exc:
        trace = exc.trace
        message = str(exc)
        code = EXIT_FAILURE
        display_console.error(message)
    except ArgumentError as exc:
        display_console.error(str(exc))
        raise typer.Exit(EXIT_CONFIG)
    except RreToolkitError as exc:
        message = str(exc)
        code = EXIT_FAILURE
        display_console.error(message)

    report = None
    if cfg.diagnostics.enabled:
        try:
            report = build_report(
                problem,
                x0,
                trace,
                k_values=cfg.diagnostics.k_values,
                perturbation=cfg.diagnostics.perturbation,
                perturbation_k=cfg.diagnostics.perturbation_k,
                rank_tol=cfg.mode.rank_tol,
            )
        except UnsupportedDiagnosticError as exc:
            display_console.error(str(exc))
            raise typer.Exit(EXIT_CONFIG)
        except RreToolkitError as exc:
            message = message or str(exc)
            code = EXIT_FAILURE
            display_console.error(str(exc))

    writer = ArtifactWriter(cfg.output.dir, cfg.output.prefix)
    csv_path = writer.write_trace_csv(trace if trace is not None else IterationTrace())
    json_path = writer.write_json(
        {
            "command": "run",
            "config": cfg.model_dump(mode="json"),
            "problem": _problem_summary(spec),
            "initial_vector": x0,
            "trace_kind": _trace_kind(trace),
            "trace": trace.model_dump(mode="json") if trace is not None else None,
            "diagnostics": report.model_dump(mode="json") if report is not None else None,
            "exit_code": code,
            "message": message,
        }
    )

    _show_trace(trace)
    if report is not None:
        _show_report(report)
    if code == EXIT_OK:
        display_console.success("Converged")
    elif code == EXIT_MAX_CYCLES:
        display_console.warning("Stopped at the cycle cap")
    display_console.info(f"Wrote {csv_path} and {json_path}")
    raise typer.Exit(code)


def _run_leg(leg: str, cfg: RunConfig, x0: np.ndarray) -> dict[str, Any]:
    """Run one comparison leg on its own problem instance."""
    problem = cfg.build_problem().problem
    settings = cfg.mode
    trace: Optional[AnyTrace] = None
    outcome: dict[str, Any] = {"leg": leg, "message": ""}
    try:
        if leg == "plain":
            trace = plain_iteration(
                problem,
                x0,
                cfg.compare.plain_max_iterations,
                settings.tol,
                settings.escape_factor,
            )
        elif leg == "n":
            trace = run_n_mode(
                problem,
                x0,
                k=settings.k,
                n_max=settings.max_cycles,
                rank_tol=settings.rank_tol,
                escape_factor=settings.escape_factor,
            )
        elif leg == "c":
            trace = run_c_mode(problem, settings.model_copy(update={"mode": ModeKind.C_MODE}), x0)
        else:
            trace = run_mc_mode(problem, settings.model_copy(update={"mode": ModeKind.MC_MODE}), x0)
    except RunAbortedError as exc:
        trace = exc.trace
        outcome["message"] = str(exc)
        outcome["failed"] = True
    except RreToolkitError as exc:
        outcome["message"] = str(exc)
        outcome["failed"] = True

    outcome["trace"] = trace
    outcome["termination"] = trace.termination if trace is not None else None
    if outcome.get("failed") and outcome["termination"] is None:
        outcome["termination"] = TerminationReason.DIVERGED
    return outcome


def _leg_points(
    trace: Optional[AnyTrace], metric: str
) -> list[tuple[int, Optional[float]]]:
    if trace is None:
        return []
    if isinstance(trace, NModeTrace):
        return [(step.f_evals, getattr(step, metric)) for step in trace.steps]
    return [(record.f_evals, getattr(record, metric)) for record in trace.records]


@app.command()
def compare(
    config: Optional[Path] = config_option,
    n: Optional[int] = n_option,
    k: Optional[int] = k_option,
    tol: Optional[float] = tol_option,
    max_cycles: Optional[int] = max_cycles_option,
    seed: Optional[int] = seed_option,
    out: Optional[Path] = out_option,
):
    """Run plain iteration and every mode side by side; write a plot-ready CSV."""
    cfg, spec, x0 = _prepare(config, n=n, k=k, tol=tol, max_cycles=max_cycles, seed=seed, out=out)
    legs = list(dict.fromkeys(cfg.compare.legs))
    if not legs:
        display_console.error(str(ConfigError("compare.legs is empty", cfg.line_of("compare", "legs"))))
        raise typer.Exit(EXIT_CONFIG)

    metric = "error_norm" if spec.solution is not None else "residual_norm"
    display_console.header(f"Comparison on '{spec.name}'", f"legs: {', '.join(legs)}; metric: {metric}")

    with ThreadPoolExecutor(max_workers=len(legs)) as pool:
        futures = [pool.submit(_run_leg, leg, cfg, x0) for leg in legs]
        outcomes = [future.result() for future in futures]

    rows = []
    for outcome in outcomes:
        trace = outcome["trace"]
        last = None
        if isinstance(trace, NModeTrace) and trace.steps:
            last = trace.steps[-1]
        elif isinstance(trace, IterationTrace) and trace.records:
            last = trace.records[-1]
        rows.append(
            {
                "leg": outcome["leg"],
                "termination": outcome["termination"],
                "f_evals": last.f_evals if last is not None else 0,
                "final_error": last.error_norm if last is not None else None,
                "final_residual": last.residual_norm if last is not None else None,
                "message": outcome["message"],
            }
        )

    writer = ArtifactWriter(cfg.output.dir, cfg.output.prefix)
    csv_path = writer.write_comparison_csv(
        {o["leg"]: _leg_points(o["trace"], metric) for o in outcomes}, metric
    )
    json_path = writer.write_json(
        {
            "command": "compare",
            "config": cfg.model_dump(mode="json"),
            "problem": _problem_summary(spec),
            "initial_vector": x0,
            "metric": metric,
            "legs": [
                {
                    **{key: value for key, value in row.items() if key != "termination"},
                    "termination": row["termination"].value if row["termination"] else None,
                    "trace_kind": _trace_kind(outcome["trace"]),
                    "trace": outcome["trace"].model_dump(mode="json")
                    if outcome["trace"] is not None
                    else None,
                }
                for row, outcome in zip(rows, outcomes)
            ],
        },
        suffix="compare.json",
    )

    _table_display.show(_table_display.comparison_table(rows))
    display_console.info(f"Wrote {csv_path} and {json_path}")
    if all(outcome.get("failed") for outcome in outcomes):
        display_console.error("Every leg failed")
        raise typer.Exit(EXIT_FAILURE)
    raise typer.Exit(EXIT_OK)


@app.command()
def diagnose(
    config: Optional[Path] = config_option,
    mode: Optional[ModeKind] = mode_option,
    n: Optional[int] = n_option,
    k: Optional[int] = k_option,
    tol: Optional[float] = tol_option,
    max_cycles: Optional[int] = max_cycles_option,
    seed: Optional[int] = seed_option,
    out: Optional[Path] = out_option,
    perturbation: Optional[bool] = typer.Option(
        None, "--perturbation/--no-perturbation", help="Companion-sequence quantities (needs s)"
    ),
):
    """Compute L, rho, theta_k bounds and per-cycle monitors; write a JSON report."""
    cfg, spec, x0 = _prepare(
        config, mode=mode, n=n, k=k, tol=tol, max_cycles=max_cycles, seed=seed, out=out
    )
    settings = cfg.diagnostics
    if perturbation is not None:
        settings = settings.model_copy(update={"perturbation": perturbation})
    problem = spec.problem

    if settings.perturbation and problem.solution is None:
        display_console.error(f"perturbation quantities need a known solution; '{spec.name}' has none")
        raise typer.Exit(EXIT_CONFIG)

    display_console.header(f"Diagnostics for '{spec.name}'", f"{cfg.mode.mode.value}-mode run")
    trace: Optional[AnyTrace] = None
    message = ""
    code = EXIT_OK
    try:
        trace = run_mode(problem, cfg.mode, x0, on_cycle=CycleMonitor(problem, cfg.mode.rank_tol))
    except RunAbortedError as exc:
        trace = exc.trace
        message = str(exc)
        display_console.warning(f"run stopped early: {message}")
    except ArgumentError as exc:
        display_console.error(str(exc))
        raise typer.Exit(EXIT_CONFIG)
    except RreToolkitError as exc:
        message = str(exc)
        code = EXIT_FAILURE
        display_console.error(message)

    report: Optional[DiagnosticsReport] = None
    try:
        report = build_report(
            problem,
            x0,
            trace,
            k_values=settings.k_values,
            perturbation=settings.perturbation,
            perturbation_k=settings.perturbation_k,
            rank_tol=cfg.mode.rank_tol,
        )
    except UnsupportedDiagnosticError as exc:
        display_console.error(str(exc))
        raise typer.Exit(EXIT_CONFIG)
    except RreToolkitError as exc:
        message = message or str(exc)
        code = EXIT_FAILURE
        display_console.error(str(exc))

    writer = ArtifactWriter(cfg.output.dir, cfg.output.prefix)
    json_path = writer.write_json(
        {
            "command": "diagnose",
            "config": cfg.model_dump(mode="json"),
            "problem": _problem_summary(spec),
            "initial_vector": x0,
            "trace_kind": _trace_kind(trace),
            "trace": trace.model_dump(mode="json") if trace is not None else None,
            "diagnostics": report.model_dump(mode="json") if report is not None else None,
            "exit_code": code,
            "message": message,
        },
        suffix="diagnostics.json",
    )

    if report is not None:
        _show_report(report)
    display_console.info(f"Wrote {json_path}")
    raise typer.Exit(code)


@app.command()
def problems():
    """List the built-in problems."""
    _table_display.show(_table_display.problems_table(list_problems()))


# ============ Version Command ============

@app.command()
def version():
    """Show version information."""
    from . import __version__
    display_console.print(f"RRE Toolkit v{__version__}")


if __name__ == "__main__":
    app()
