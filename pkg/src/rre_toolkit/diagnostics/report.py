"""Per-cycle monitoring and assembly of DiagnosticsReport."""

import logging
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from ..errors import UnsupportedDiagnosticError
from ..extrapolation.rre import IterateWindow, build_differences
from ..models.diagnostics import DiagnosticFinding, DiagnosticsReport, Severity
from ..models.extrapolation import ExtrapolationResult
from ..models.problem import FixedPointProblem
from ..models.trace import CycleDiagnostics, IterationTrace, NModeTrace
from ..modes.iteration import iterate
from .bounds import spectral_summary, theta_upper_bounds
from .conditions import jbilou_sadok_condition
from .jacobian import jacobian_fd
from .krylov import sigma_k
from .perturbation import perturbation_quantities

logger = logging.getLogger(__name__)


def jacobian_at(problem: FixedPointProblem, x: np.ndarray) -> np.ndarray:
    """Analytic Jacobian when the problem has one, central differences otherwise."""
    if problem.jacobian is not None:
        return np.asarray(problem.jacobian(x), dtype=np.float64)
    return jacobian_fd(problem.f, x)


class CycleMonitor:
    """
    Cycle hook computing sigma_k(S(e_n)), the determinant condition and sum |gamma_i|.

    sigma_k(S(e_n)) needs the solution; without it only the other two are filled.
    """

    def __init__(self, problem: FixedPointProblem, rank_tol: Optional[float] = None):
        self.problem = problem
        self.rank_tol = rank_tol
        self._jacobian: Optional[np.ndarray] = None
        if problem.solution is not None:
            self._jacobian = jacobian_at(problem, problem.solution)

    def __call__(self, window: IterateWindow, result: ExtrapolationResult) -> CycleDiagnostics:
        return CycleDiagnostics(
            sigma_k_s=self._sigma(window),
            jbilou_sadok=self._determinant(window),
            gamma_abs_sum=result.gamma_abs_sum,
        )

    def _sigma(self, window: IterateWindow) -> Optional[float]:
        if self._jacobian is None or self.problem.solution is None:
            return None
        error = window.iterate(0) - self.problem.solution
        if window.k > window.dimension or not np.linalg.norm(error) > 0:
            return None
        return sigma_k(self._jacobian, error, window.k, self.rank_tol)

    @staticmethod
    def _determinant(window: IterateWindow) -> Optional[float]:
        columns = build_differences(window).u[:, : window.k]
        if np.any(np.linalg.norm(columns, axis=0) == 0.0):
            return None
        return jbilou_sadok_condition(columns)


def _finite_max(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None and np.isfinite(v)]
    return max(present) if present else None


def _finite_min(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None and np.isfinite(v)]
    return min(present) if present else None


def build_report(
    problem: FixedPointProblem,
    x0: ArrayLike,
    trace: Optional[Union[IterationTrace, NModeTrace]] = None,
    k_values: Sequence[int] = (1, 2),
    perturbation: bool = False,
    perturbation_k: int = 1,
    rank_tol: Optional[float] = None,
) -> DiagnosticsReport:
    """
    Assemble the theory-side quantities for a problem and an optional run.

    F is taken at the solution when it is known, otherwise at the last
    iterate of the run (or x0 without a run).

    Raises:
        UnsupportedDiagnosticError: If perturbation quantities are requested without a known solution
    """
    start = np.asarray(x0, dtype=np.float64)
    if problem.solution is not None:
        point, evaluated_at = problem.solution, "solution"
    elif isinstance(trace, IterationTrace) and trace.final_iterate is not None:
        point, evaluated_at = trace.final_iterate, "final_iterate"
    elif isinstance(trace, NModeTrace) and trace.steps:
        point, evaluated_at = trace.steps[-1].extrapolation.s_nk, "final_iterate"
    else:
        point, evaluated_at = start, "initial_vector"

    if perturbation and problem.solution is None:
        raise UnsupportedDiagnosticError(
            "perturbation quantities need a known solution; problem "
            f"'{problem.name}' does not provide one"
        )

    jac = jacobian_at(problem, point)
    l_estimate, rho = spectral_summary(jac)
    report = DiagnosticsReport(
        l_estimate=l_estimate,
        spectral_radius=rho,
        evaluated_at=evaluated_at,
        theta_bounds=[theta_upper_bounds(jac, k) for k in k_values],
    )

    if isinstance(trace, IterationTrace):
        cycles = trace.cycle_records
        monitored = [r.diagnostics for r in cycles if r.diagnostics is not None]
        report.sigma_k_s = [d.sigma_k_s for d in monitored]
        report.jbilou_sadok = [d.jbilou_sadok for d in monitored]
        report.gamma_abs_sums = [
            r.extrapolation.gamma_abs_sum for r in cycles if r.extrapolation is not None
        ]
        rank_deficient = [
            r.cycle for r in cycles if r.extrapolation is not None and r.extrapolation.rank_deficient
        ]
    elif isinstance(trace, NModeTrace):
        report.gamma_abs_sums = [step.extrapolation.gamma_abs_sum for step in trace.steps]
        rank_deficient = [step.n for step in trace.steps if step.extrapolation.rank_deficient]
    else:
        rank_deficient = []
    report.sigma_k_s_min = _finite_min(report.sigma_k_s)
    report.gamma_abs_sum_max = _finite_max(report.gamma_abs_sums)

    if perturbation and problem.solution is not None:
        iterates = iterate(problem, start, perturbation_k + 1)
        window = IterateWindow.from_iterates(iterates, 0, perturbation_k)
        report.perturbation = perturbation_quantities(window, jac, problem.solution, rank_tol)
        report.delta = report.perturbation.delta

    report.findings = _findings(report, problem, rank_deficient)
    for finding in report.findings:
        if finding.severity != Severity.INFO:
            logger.warning(f"{finding.title}: {finding.description}")
    return report


def _findings(
    report: DiagnosticsReport, problem: FixedPointProblem, rank_deficient: list[int]
) -> list[DiagnosticFinding]:
    findings = []
    if report.l_estimate >= 1.0:
        findings.append(
            DiagnosticFinding(
                title="Non-contraction",
                description=(
                    f"||F|| = {report.l_estimate:.4g} at the {report.evaluated_at.replace('_', ' ')}; "
                    "the map is not a contraction there"
                ),
                severity=Severity.WARNING,
            )
        )
    if report.spectral_radius >= 1.0:
        findings.append(
            DiagnosticFinding(
                title="Spectral radius not below one",
                description=f"rho(F) = {report.spectral_radius:.4g}; plain iteration need not converge",
                severity=Severity.CRITICAL if report.spectral_radius > 1.0 else Severity.WARNING,
            )
        )
    if report.evaluated_at != "solution":
        findings.append(
            DiagnosticFinding(
                title="Solution unknown",
                description=f"F was evaluated at the {report.evaluated_at.replace('_', ' ')} of '{problem.name}'",
            )
        )
    if rank_deficient:
        findings.append(
            DiagnosticFinding(
                title="Rank-deficient windows",
                description=f"W lost numerical rank at {len(rank_deficient)} step(s): {rank_deficient[:10]}",
            )
        )
    if report.sigma_k_s_min is not None and report.sigma_k_s_min == 0.0:
        findings.append(
            DiagnosticFinding(
                title="Krylov matrix lost rank",
                description="sigma_k(S(e_n)) vanished in at least one cycle",
                severity=Severity.WARNING,
            )
        )
    if report.perturbation is not None and not report.perturbation.delta_below_one:
        findings.append(
            DiagnosticFinding(
                title="Perturbation regime not reached",
                description=f"Delta = {report.perturbation.delta:.4g} >= 1; start closer to the solution",
            )
        )
    return findings
