"""Tests for plain iteration, degree detection and the three usage modes."""

import numpy as np
import pytest
from pydantic import ValidationError

from rre_toolkit.errors import ArgumentError, DegreeDetectionError, DivergenceError
from rre_toolkit.models import (
    CycleDiagnostics,
    ModeConfig,
    ModeKind,
    NModeTrace,
    TerminationReason,
)
from rre_toolkit.models.problem import FixedPointProblem
from rre_toolkit.modes import (
    IterateStream,
    MCModeDriver,
    counting,
    detect_numerical_degree,
    error_ratios,
    iterate,
    plain_iteration,
    run_c_mode,
    run_mc_mode,
    run_mode,
    run_n_mode,
)
from rre_toolkit.problems import make_linear


class TestIterate:
    def test_halving(self, halving_problem):
        values = [x[0] for x in iterate(halving_problem, [8.0], 3)]
        assert values == [8.0, 4.0, 2.0, 1.0]

    def test_negative_count(self, halving_problem):
        with pytest.raises(ArgumentError):
            iterate(halving_problem, [1.0], -1)

    def test_escape_ball(self):
        doubling = FixedPointProblem(dimension=1, f=lambda x: 2.0 * x)
        with pytest.raises(DivergenceError) as info:
            iterate(doubling, [1.0], 10, radius=5.0)
        assert info.value.index == 3

    def test_non_finite_iterate(self):
        blowup = FixedPointProblem(dimension=1, f=lambda x: x * np.inf)
        with pytest.raises(DivergenceError) as info:
            iterate(blowup, [1.0], 2)
        assert info.value.index == 1

    def test_cos_iterates_approach_solution(self, cos_problem):
        iterates = iterate(cos_problem.problem, [1.0], 100)
        s = cos_problem.solution
        assert abs(iterates[100] - s)[0] < abs(iterates[10] - s)[0]


class TestIterateStream:
    def test_reuses_first_image_and_cache(self, halving_problem):
        counted, counter = counting(halving_problem)
        x0 = np.array([1.0])
        stream = IterateStream(counted, x0, first_image=np.array([0.5]))
        window = stream.window(0, 2)
        assert counter.count == 2
        np.testing.assert_allclose(window.vectors, [[1.0, 0.5, 0.25, 0.125]])
        stream.window(0, 1)
        assert counter.count == 2
        assert len(stream) == 4


class TestPlainIteration:
    def test_converges(self, halving_problem):
        trace = plain_iteration(halving_problem, [1.0], max_iterations=100, tol=1e-3)
        assert trace.termination == TerminationReason.CONVERGED
        assert len(trace.records) == 10
        assert [r.f_evals for r in trace.records] == list(range(1, 11))

    def test_iteration_cap(self, halving_problem):
        trace = plain_iteration(halving_problem, [1.0], max_iterations=3, tol=1e-12)
        assert trace.termination == TerminationReason.MAX_CYCLES
        assert len(trace.records) == 4


class TestDegreeDetection:
    def test_generic_start(self, make_linear_map):
        problem = make_linear_map(np.diag([0.5, 0.3, 0.5]), [1.0, -1.0, 2.0])
        stream = IterateStream(problem, np.zeros(3))
        assert detect_numerical_degree(stream, 0, 1e-10, 3) == 2

    def test_eigenvector_start(self, make_linear_map):
        problem = make_linear_map(np.diag([0.5, 0.3, 0.5]), [1.0, -1.0, 2.0])
        x0 = problem.solution + np.array([0.0, 1.0, 0.0])
        assert detect_numerical_degree(IterateStream(problem, x0), 0, 1e-10, 3) == 1

    def test_no_degree_within_cap(self, make_linear_map):
        problem = make_linear_map(np.diag([0.5, 0.3]), [1.0, 1.0])
        with pytest.raises(DegreeDetectionError):
            detect_numerical_degree(IterateStream(problem, np.zeros(2)), 0, 1e-10, 1)

    def test_rejects_bad_tolerance(self, halving_problem):
        with pytest.raises(ArgumentError):
            detect_numerical_degree(IterateStream(halving_problem, np.ones(1)), 0, 0.0, 1)


class TestNMode:
    def test_exact_for_linear_degree(self, linear_two_point):
        x0 = linear_two_point.initial_vector(1, 1.0)
        trace = run_n_mode(linear_two_point.problem, x0, k=2, n_max=5)
        assert trace.termination == TerminationReason.COMPLETED
        assert len(trace.steps) == 6
        assert all(step.error_norm < 1e-8 for step in trace.steps)
        assert trace.steps[-1].f_evals == 8

    def test_stationary_start(self, linear_two_point):
        trace = run_n_mode(linear_two_point.problem, linear_two_point.solution, k=1, n_max=4)
        assert trace.termination == TerminationReason.CONVERGED
        assert len(trace.steps) == 1
        assert trace.steps[0].extrapolation.converged

    def test_degenerate_window_ends_scan_as_converged(self):
        shift = FixedPointProblem(dimension=1, f=lambda x: x + 1.0)
        trace = run_n_mode(shift, [0.0], k=1, n_max=3)
        assert trace.termination == TerminationReason.CONVERGED
        assert trace.steps == []

    def test_scan_past_rounding_floor_is_not_a_failure(self, coupled_problem):
        x0 = coupled_problem.initial_vector(0, 0.5)
        trace = run_n_mode(coupled_problem.problem, x0, k=2, n_max=80)
        assert trace.termination in (TerminationReason.CONVERGED, TerminationReason.COMPLETED)
        assert min(step.error_norm for step in trace.steps) < 1e-12

    def test_error_ratios_below_one(self, cos_problem):
        x0 = cos_problem.initial_vector(0, 0.1)
        trace = run_n_mode(cos_problem.problem, x0, k=1, n_max=15)
        ratios = error_ratios(trace)
        assert len(ratios) == 16
        assert all(ratio is not None and ratio <= 1.0 for ratio in ratios[2:])

    def test_rejects_bad_k(self, halving_problem):
        with pytest.raises(ArgumentError):
            run_n_mode(halving_problem, [1.0], k=0, n_max=3)


class TestCMode:
    def test_linear_degree_needs_one_cycle(self, linear_two_point):
        config = ModeConfig(mode=ModeKind.C_MODE, k=2, tol=1e-10)
        trace = run_c_mode(linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0))
        assert trace.converged
        assert trace.cycle_count == 1
        assert trace.records[0].f_evals == 1
        assert trace.records[1].f_evals == 4
        assert trace.records[1].k_used == 2

    def test_start_at_solution(self, linear_two_point):
        config = ModeConfig(mode=ModeKind.C_MODE, k=1)
        trace = run_c_mode(linear_two_point.problem, config, linear_two_point.solution)
        assert trace.converged
        assert trace.cycle_count == 0
        assert len(trace.records) == 1

    def test_weighted_error_never_increases(self, symmetric_linear):
        config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-12, max_cycles=200)
        trace = run_c_mode(symmetric_linear.problem, config, symmetric_linear.initial_vector(0, 1.0))
        assert trace.converged
        weighted = [r.weighted_error_norm for r in trace.records]
        assert all(later <= earlier + 1e-13 for earlier, later in zip(weighted, weighted[1:]))
        assert weighted[-1] < 1e-3 * weighted[0]

    def test_cycle_cap(self, linear_two_point):
        config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-15, max_cycles=3)
        trace = run_c_mode(linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0))
        assert trace.termination == TerminationReason.MAX_CYCLES
        assert trace.cycle_count == 3

    def test_divergence_keeps_partial_trace(self, make_linear_map):
        problem = make_linear_map([[2.0]], [1.0])
        config = ModeConfig(mode=ModeKind.C_MODE, k=1, escape_factor=1e-3)
        with pytest.raises(DivergenceError) as info:
            run_c_mode(problem, config, [1.0])
        trace = info.value.trace
        assert trace.termination == TerminationReason.DIVERGED
        assert len(trace.records) == 1

    def test_cycle_hook(self, linear_two_point):
        calls = []

        def hook(window, result):
            calls.append(window.k)
            return CycleDiagnostics(gamma_abs_sum=result.gamma_abs_sum)

        config = ModeConfig(mode=ModeKind.C_MODE, k=1, tol=1e-15, max_cycles=4)
        trace = run_c_mode(
            linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0), on_cycle=hook
        )
        assert calls == [1, 1, 1, 1]
        assert all(r.diagnostics is not None for r in trace.cycle_records)

    def test_mode_mismatch(self, linear_two_point):
        with pytest.raises(ArgumentError):
            run_c_mode(linear_two_point.problem, ModeConfig(mode=ModeKind.MC_MODE), [0.0, 0.0])


class TestMCMode:
    def test_one_cycle_on_linear_problem(self):
        spec = make_linear([0.6, -0.3, 0.1], dimension=6, transform="orthogonal", seed=2)
        config = ModeConfig(mode=ModeKind.MC_MODE, tol=1e-10)
        trace = run_mc_mode(spec.problem, config, spec.initial_vector(5, 1.0))
        assert trace.converged
        assert trace.cycle_count == 1
        assert trace.records[1].k_used == 3
        assert trace.records[1].error_norm <= 1e-8
        assert trace.records[1].f_evals == 5

    def test_constant_map(self, make_linear_map):
        problem = make_linear_map(np.zeros((2, 2)), [1.0, -2.0])
        trace = run_mc_mode(problem, ModeConfig(mode=ModeKind.MC_MODE), np.zeros(2))
        assert trace.cycle_count == 1
        assert trace.records[1].k_used == 1
        np.testing.assert_allclose(trace.final_iterate, [1.0, -2.0])

    def test_degree_failure_keeps_trace(self, make_linear_map):
        problem = make_linear_map(np.diag([0.5, 0.3]), [1.0, 1.0])
        config = ModeConfig(mode=ModeKind.MC_MODE, k_max=1)
        with pytest.raises(DegreeDetectionError) as info:
            run_mc_mode(problem, config, np.zeros(2))
        assert info.value.trace.termination == TerminationReason.DEGREE_FAILURE

    def test_k_max_above_dimension(self, linear_two_point):
        with pytest.raises(ArgumentError):
            MCModeDriver(linear_two_point.problem, ModeConfig(mode=ModeKind.MC_MODE, k_max=3))


class TestModeConfig:
    def test_defaults(self):
        config = ModeConfig()
        assert config.mode == ModeKind.C_MODE
        assert (config.n, config.k, config.tol) == (0, 1, 1e-10)

    @pytest.mark.parametrize("field, value", [("k", 0), ("n", -1), ("tol", 0.0), ("max_cycles", 0)])
    def test_rejects_invalid(self, field, value):
        with pytest.raises(ValidationError):
            ModeConfig(**{field: value})

    def test_rejects_unknown_field(self):
        with pytest.raises(ValidationError):
            ModeConfig(order=2)


def test_run_mode_dispatches_n_mode(linear_two_point):
    config = ModeConfig(mode=ModeKind.N_MODE, k=1, max_cycles=3)
    trace = run_mode(linear_two_point.problem, config, linear_two_point.initial_vector(0, 1.0))
    assert isinstance(trace, NModeTrace)
    assert len(trace.steps) == 4
