"""End-to-end convergence properties of the three usage modes."""

import numpy as np
import pytest
from scipy.stats import gmean

from rre_toolkit.diagnostics import (
    CycleMonitor,
    build_report,
    error_split,
    spectral_summary,
    theta_upper_bounds,
)
from rre_toolkit.extrapolation import IterateWindow
from rre_toolkit.models import ModeConfig, ModeKind
from rre_toolkit.modes import error_ratios, iterate, run_c_mode, run_mc_mode, run_n_mode
from rre_toolkit.problems import make_linear
from rre_toolkit.problems.linear import TRANSFORMS

EIGENVALUE_GRID = (-0.8, -0.4, 0.0, 0.3, 0.6, 0.85)
MONITOR_TOL = 1e-10

# sum |gamma| ceilings per run:
# cos, k = 1: f' < 0 on the start ball, so both weights are positive and sum to 1
# coupled2d, k = 1: ||F|| <= 0.74 on the start ball gives 1 + 2 / (1 - 0.74)
# symmetric linear, k = 2: residual-polynomial roots lie in [0.2, 0.8], so (1.8 / 0.2)^2
GAMMA_CEILINGS = {"cos_problem": 1.0 + 1e-9, "coupled_problem": 8.7, "symmetric_linear": 81.0}


def test_mc_mode_solves_linear_problems_in_one_cycle():
    config = ModeConfig(mode=ModeKind.MC_MODE, tol=1e-10)
    for seed in range(20):
        rng = np.random.default_rng(seed)
        dimension = int(rng.integers(2, 21))
        distinct = int(rng.integers(1, min(4, dimension) + 1))
        spectrum = rng.choice(EIGENVALUE_GRID, size=distinct, replace=False)
        spec = make_linear(spectrum, dimension, TRANSFORMS[seed % 3], seed=seed)

        trace = run_mc_mode(spec.problem, config, spec.initial_vector(seed, 1.0))

        assert trace.converged, (seed, trace.message)
        assert trace.cycle_count == 1
        assert trace.records[1].k_used == spec.expected_degree
        assert trace.records[1].error_norm <= 1e-8 * np.linalg.norm(spec.solution)


def test_c_mode_linear_rate_within_chebyshev_bound():
    spec = make_linear(np.linspace(0.2, 0.8, 20), transform="orthogonal", seed=5)
    config = ModeConfig(mode=ModeKind.C_MODE, n=0, k=2, tol=1e-15, max_cycles=9)
    trace = run_c_mode(spec.problem, config, spec.initial_vector(0, 1.0))
    bound = theta_upper_bounds(spec.jacobian_at_solution, 2).chebyshev
    assert bound == pytest.approx(2.0 / 9.0, abs=1e-12)

    weighted = [record.weighted_error_norm for record in trace.records]
    assert len(weighted) == 10
    ratios = [weighted[r + 1] / weighted[r] for r in range(3, 9)]
    assert gmean(ratios) <= bound + 1e-6


def test_mc_mode_converges_quadratically(quadratic_four):
    assert spectral_summary(quadratic_four.jacobian_at_solution)[0] == pytest.approx(0.6)
    config = ModeConfig(mode=ModeKind.MC_MODE, tol=1e-14, max_cycles=6)
    x0 = quadratic_four.initial_vector(1, 0.1)
    trace = run_mc_mode(quadratic_four.problem, config, x0)

    errors = trace.error_norms()
    assert errors[0] == pytest.approx(0.1)
    assert min(errors) <= 1e-12

    constants = [
        later / earlier**2
        for earlier, later in zip(errors, errors[1:])
        if earlier >= 1e-6 and later > 0.0
    ]
    assert constants
    assert max(constants) < 10.0 * min(constants)


@pytest.mark.parametrize("fixture_name, n_max", [("cos_problem", 30), ("coupled_problem", 20)])
@pytest.mark.parametrize("k", [1, 2])
def test_n_mode_errors_decay_faster_than_iterates(request, fixture_name, n_max, k):
    spec = request.getfixturevalue(fixture_name)
    trace = run_n_mode(spec.problem, spec.initial_vector(0, 0.1), k=k, n_max=n_max)
    assert len(trace.steps) == n_max + 1

    for step in trace.steps[2:]:
        assert step.error_norm <= step.iterate_error_norm

    l_hat, _ = spectral_summary(spec.jacobian_at_solution)
    assert error_ratios(trace)[-1] <= l_hat**k + 0.05


def test_error_split_on_scalar_quadratic(scalar_quadratic):
    problem = scalar_quadratic.problem
    iterates = iterate(problem, [0.1], 8)
    for n in range(6):
        split = error_split(IterateWindow.from_iterates(iterates, n, 1), [[0.5]], problem.solution)
        scale = max(np.linalg.norm(split.s_check), np.linalg.norm(split.s_nk - split.s_tilde))
        assert split.mismatch <= 1e-9 * scale


@pytest.mark.parametrize(
    "fixture_name, k", [("symmetric_linear", 2), ("cos_problem", 1), ("coupled_problem", 1)]
)
def test_global_assumption_monitor_on_converging_runs(request, fixture_name, k):
    spec = request.getfixturevalue(fixture_name)
    problem = spec.problem
    x0 = spec.initial_vector(2, 0.5)
    config = ModeConfig(mode=ModeKind.C_MODE, k=k, tol=MONITOR_TOL)
    trace = run_c_mode(problem, config, x0, on_cycle=CycleMonitor(problem))
    assert trace.converged

    report = build_report(problem, x0, trace, k_values=[k])
    assert len(report.sigma_k_s) == trace.cycle_count
    assert all(value is not None and value > 0.0 for value in report.sigma_k_s)
    if k == 1:
        # sigma_1(S(e)) = ||e||, and every cycle starts above the residual tolerance
        assert report.sigma_k_s_min >= MONITOR_TOL / 2.0
    assert 1.0 - 1e-12 <= report.gamma_abs_sum_max <= GAMMA_CEILINGS[fixture_name]
