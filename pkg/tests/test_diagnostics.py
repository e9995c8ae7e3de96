"""Tests for Jacobians, theta bounds, Krylov monitors and the perturbation split."""

import numpy as np
import pytest

from rre_toolkit.diagnostics import (
    CycleMonitor,
    build_report,
    chebyshev_estimate,
    chebyshev_exact,
    check_global_assumption,
    companion_iterates,
    error_split,
    jacobian_fd,
    jbilou_sadok_condition,
    krylov_matrix,
    perturbation_quantities,
    remainder_ratios,
    sigma_k,
    spectral_summary,
    theta_upper_bounds,
)
from rre_toolkit.errors import ArgumentError, UnsupportedDiagnosticError
from rre_toolkit.extrapolation import IterateWindow, extrapolate
from rre_toolkit.models import ModeConfig, ModeKind, Severity
from rre_toolkit.modes import iterate, run_c_mode
from rre_toolkit.problems import make_identity, make_linear


def window_from(problem, x0, n, k):
    return IterateWindow.from_iterates(iterate(problem, x0, n + k + 1), n, k)


class TestJacobian:
    def test_linear_map(self, rng):
        t = rng.standard_normal((3, 3))
        np.testing.assert_allclose(jacobian_fd(lambda x: t @ x, rng.standard_normal(3)), t, atol=1e-8)

    def test_polynomial_map(self, rng):
        def f(x):
            return np.array([x[0] ** 2 * x[1], x[1] ** 3 + x[0]])

        x = rng.uniform(-1.0, 1.0, 2)
        expected = np.array([[2 * x[0] * x[1], x[0] ** 2], [1.0, 3 * x[1] ** 2]])
        np.testing.assert_allclose(jacobian_fd(f, x), expected, atol=1e-6)

    def test_rejects_bad_step(self):
        with pytest.raises(ArgumentError):
            jacobian_fd(lambda x: x, np.zeros(2), h=0.0)


class TestThetaBounds:
    def test_scaled_identity(self):
        bounds = theta_upper_bounds(0.5 * np.eye(3), 3)
        assert bounds.power == pytest.approx(0.125)
        assert bounds.chebyshev == 0.0
        assert bounds.chebyshev_exact == 0.0

    def test_two_point_spectrum(self):
        bounds = theta_upper_bounds(np.diag([0.2, 0.8]), 2)
        assert bounds.power == pytest.approx(0.64)
        assert bounds.chebyshev == pytest.approx(2.0 / 9.0, abs=1e-12)
        assert bounds.chebyshev_exact == pytest.approx(9.0 / 41.0, abs=1e-12)
        assert bounds.pd_hermitian_part == pytest.approx(0.9375)
        assert bounds.tightest == pytest.approx(9.0 / 41.0, abs=1e-12)

    def test_nonsymmetric_indefinite_keeps_only_power(self):
        bounds = theta_upper_bounds(np.array([[0.0, 3.0], [0.0, 0.0]]), 2)
        assert bounds.power == pytest.approx(9.0)
        assert bounds.pd_hermitian_part is None
        assert bounds.chebyshev is None
        assert bounds.applicable() == [bounds.power]

    def test_chebyshev_forms(self):
        assert chebyshev_estimate(0.2, 0.8, 1) == pytest.approx(2.0 / 3.0)
        assert chebyshev_exact(0.2, 0.8, 1) == pytest.approx(0.6)
        assert chebyshev_exact(0.5, 0.5, 4) == 0.0

    def test_rejects_k_zero(self):
        with pytest.raises(ArgumentError):
            theta_upper_bounds(np.eye(2), 0)

    def test_bounds_certify_linear_reduction(self, symmetric_linear):
        problem = symmetric_linear.problem
        g = symmetric_linear.jacobian_at_solution - np.eye(problem.dimension)
        bounds = theta_upper_bounds(symmetric_linear.jacobian_at_solution, 2)
        for seed in range(5):
            x0 = symmetric_linear.initial_vector(seed, 1.0)
            for n in range(4):
                window = window_from(problem, x0, n, 2)
                before = np.linalg.norm(g @ (window.iterate(0) - problem.solution))
                after = np.linalg.norm(g @ (extrapolate(window).s_nk - problem.solution))
                for bound in bounds.applicable():
                    assert after <= bound * before + 1e-8

    def test_spectral_summary(self):
        norm, rho = spectral_summary(np.array([[0.5, 1.0], [0.0, 0.5]]))
        assert rho == pytest.approx(0.5)
        assert norm > 1.0


class TestKrylov:
    def test_matrix_columns(self):
        s = krylov_matrix(np.diag([2.0, 3.0]), [1.0, 1.0], 2)
        np.testing.assert_allclose(s, [[1.0, 2.0], [1.0, 3.0]])

    def test_k_above_dimension(self):
        with pytest.raises(ArgumentError):
            krylov_matrix(np.eye(2), [1.0, 0.0], 3)

    def test_zero_start(self):
        with pytest.raises(ArgumentError):
            krylov_matrix(np.eye(2), [0.0, 0.0], 1)

    def test_identity_loses_rank(self):
        assert sigma_k(np.eye(3), [1.0, 2.0, 3.0], 2) == 0.0

    def test_global_assumption(self):
        f = np.diag([0.2, 0.5, 0.8])
        generic = check_global_assumption(f, [np.ones(3), np.array([1.0, -2.0, 0.5])], 3)
        assert generic.minimum > 0.0
        eigenvector = check_global_assumption(f, [np.array([0.0, 1.0, 0.0])], 2)
        assert eigenvector.minimum == 0.0
        assert check_global_assumption(f, [], 2).minimum is None


class TestJbilouSadok:
    def test_orthonormal(self):
        assert jbilou_sadok_condition(np.eye(3)[:, :2]) == pytest.approx(1.0)

    def test_identical_columns(self):
        assert jbilou_sadok_condition([np.ones(2), np.ones(2)]) == pytest.approx(0.0, abs=1e-7)

    def test_forty_five_degrees(self):
        value = jbilou_sadok_condition([np.array([1.0, 0.0]), np.array([1.0, 1.0])])
        assert value == pytest.approx(1.0 / np.sqrt(2.0))

    def test_zero_column(self):
        with pytest.raises(ArgumentError):
            jbilou_sadok_condition([np.ones(2), np.zeros(2)])


class TestPerturbation:
    def test_companion_iterates(self):
        iterates = companion_iterates([1.0], [[0.5]], [0.0], 2)
        assert [x[0] for x in iterates] == [1.0, 0.5, 0.25]

    def test_linear_problem_has_no_perturbation(self, linear_two_point):
        problem = linear_two_point.problem
        window = window_from(problem, linear_two_point.initial_vector(0, 1.0), 0, 1)
        report = perturbation_quantities(
            window, linear_two_point.jacobian_at_solution, problem.solution
        )
        assert report.delta == pytest.approx(0.0, abs=1e-12)
        assert report.h_norm == pytest.approx(0.0, abs=1e-10)
        assert not report.rank_deficient

    def test_delta_shrinks_towards_solution(self, scalar_quadratic):
        problem = scalar_quadratic.problem
        deltas = []
        for start in (1e-1, 1e-2, 1e-3):
            report = perturbation_quantities(
                window_from(problem, [start], 0, 1), [[0.5]], problem.solution
            )
            assert report.delta_below_one
            assert report.bound_holds
            deltas.append(report.delta)
        assert deltas[0] > deltas[1] > deltas[2] > 0.0

    def test_remainder_ratios_stay_bounded(self, scalar_quadratic):
        problem = scalar_quadratic.problem
        ratios = np.array(
            [
                remainder_ratios(window_from(problem, [start], 0, 1), [[0.5]], problem.solution)
                for start in (1e-1, 1e-2, 1e-3)
            ]
        )
        assert np.all(ratios[:, 0] == 0.0)
        assert np.all(np.isfinite(ratios))
        assert np.all(ratios[:, 1:].max(axis=0) < 2.0 * ratios[:, 1:].min(axis=0))

    def test_split_identity_on_quadratic(self, quadratic_four):
        problem = quadratic_four.problem
        f = quadratic_four.jacobian_at_solution
        x0 = quadratic_four.initial_vector(3, 0.1)
        for n in range(3):
            split = error_split(window_from(problem, x0, n, 2), f, problem.solution)
            scale = max(np.linalg.norm(split.s_check), np.linalg.norm(split.s_nk - split.s_tilde))
            assert split.mismatch <= 1e-9 * scale


class TestMonitorAndReport:
    def test_cycle_monitor(self, linear_two_point):
        problem = linear_two_point.problem
        config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-15, max_cycles=3)
        trace = run_c_mode(
            problem, config, linear_two_point.initial_vector(0, 1.0), on_cycle=CycleMonitor(problem)
        )
        for record in trace.cycle_records:
            assert record.diagnostics.sigma_k_s > 0.0
            assert 0.0 <= record.diagnostics.jbilou_sadok <= 1.0 + 1e-12
            assert record.diagnostics.gamma_abs_sum >= 1.0

    def test_report_for_linear_run(self, linear_two_point):
        problem = linear_two_point.problem
        x0 = linear_two_point.initial_vector(0, 1.0)
        config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-15, max_cycles=3)
        trace = run_c_mode(problem, config, x0, on_cycle=CycleMonitor(problem))
        report = build_report(problem, x0, trace, k_values=[2])
        assert report.evaluated_at == "solution"
        assert report.l_estimate == pytest.approx(0.8)
        assert report.theta_bounds[0].chebyshev == pytest.approx(2.0 / 9.0, abs=1e-12)
        assert len(report.sigma_k_s) == 3
        assert report.sigma_k_s_min > 0.0
        assert report.gamma_abs_sum_max >= 1.0
        assert report.warning_count == 0

    def test_report_flags_non_contraction(self):
        spec = make_identity()
        report = build_report(spec.problem, np.ones(2))
        titles = {finding.title for finding in report.findings}
        assert report.l_estimate == pytest.approx(1.0)
        assert "Non-contraction" in titles
        assert "Solution unknown" in titles
        assert any(f.severity == Severity.WARNING for f in report.findings)

    def test_perturbation_needs_solution(self):
        spec = make_identity()
        with pytest.raises(UnsupportedDiagnosticError):
            build_report(spec.problem, np.ones(2), perturbation=True)

    def test_report_with_perturbation(self, scalar_quadratic):
        report = build_report(scalar_quadratic.problem, [0.01], perturbation=True)
        assert report.perturbation is not None
        assert report.delta == report.perturbation.delta
        assert report.perturbation.delta_below_one

    def test_report_without_solution_uses_final_iterate(self):
        spec = make_linear([0.3, 0.6], seed=1).without_solution()
        problem = spec.problem
        config = ModeConfig(mode=ModeKind.C_MODE, k=2)
        trace = run_c_mode(problem, config, np.zeros(2))
        report = build_report(problem, np.zeros(2), trace)
        assert report.evaluated_at == "final_iterate"
        assert report.l_estimate == pytest.approx(0.6, abs=1e-6)
