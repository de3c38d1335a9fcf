import numpy as np
import pytest

from globalgates.core.catalog import ccphase_global_3g
from globalgates.core.errors import InvalidOptionError, OptimizationAborted
from globalgates.core.targets import target_matrix
from globalgates.enums import ObjectiveMode, TargetName
from globalgates.schemas.synthesis import SynthesisProblem
from globalgates.synthesis.ansatz import build_ansatz, encode_circuit
from globalgates.synthesis.objective import objective
from globalgates.synthesis import optimizer
from globalgates.synthesis.optimizer import fit, optimize_once

CCPHASE = target_matrix("ccphase")


def test_start_at_a_solution_stays_there(global_g):
    a = build_ansatz(3, 3, global_g)
    x0 = encode_circuit(ccphase_global_3g(), a)
    outcome = fit(a, CCPHASE, x0)
    assert outcome.objective < 1e-18
    assert outcome.aligned_distance < 1e-8


def test_descent_never_ends_above_the_start(global_g, rng):
    a = build_ansatz(3, 2, global_g)
    for _ in range(5):
        x0 = rng.uniform(0, 2 * np.pi, a.n_params)
        outcome = fit(a, CCPHASE, x0, max_iterations=50)
        assert outcome.objective <= outcome.initial_objective + 1e-12


@pytest.mark.parametrize("mode", list(ObjectiveMode))
def test_outcome_reports_the_mode_objective(mode, global_g, rng):
    a = build_ansatz(3, 2, global_g)
    x0 = rng.uniform(0, 2 * np.pi, a.n_params)
    outcome = fit(a, CCPHASE, x0, mode=mode, max_iterations=20)
    assert outcome.initial_objective == pytest.approx(objective(x0, a, CCPHASE, mode))
    assert outcome.objective == pytest.approx(objective(outcome.params, a, CCPHASE, mode))


def test_inactive_parameters_are_frozen(global_g, rng):
    a = build_ansatz(3, 2, global_g)
    x0 = rng.uniform(0, 2 * np.pi, a.n_params)
    active = np.zeros(a.n_params, dtype=bool)
    active[a.entangler_slice] = True
    outcome = fit(a, CCPHASE, x0, active=active, max_iterations=30)
    np.testing.assert_array_equal(outcome.params[~active], x0[~active])


@pytest.mark.parametrize("mode", list(ObjectiveMode))
def test_no_free_parameters(mode, global_g):
    a = build_ansatz(3, 1, global_g)
    x0 = np.zeros(a.n_params)
    outcome = fit(a, CCPHASE, x0, mode=mode, active=np.zeros(a.n_params, dtype=bool))
    assert outcome.evaluations == 0
    assert outcome.objective == outcome.initial_objective
    np.testing.assert_array_equal(outcome.params, x0)


def test_no_free_parameters_objective_value(global_g):
    a = build_ansatz(3, 1, global_g)
    outcome = fit(a, CCPHASE, np.zeros(a.n_params), active=np.zeros(a.n_params, dtype=bool))
    assert outcome.objective == pytest.approx(4.0)


def test_solver_linear_algebra_failure_aborts_the_start(global_g, monkeypatch):
    def failing_solver(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr(optimizer, "least_squares", failing_solver)
    a = build_ansatz(3, 1, global_g)
    with pytest.raises(OptimizationAborted, match="SVD did not converge"):
        fit(a, CCPHASE, np.zeros(a.n_params))


@pytest.mark.parametrize("options", [{"max_iterations": 0}, {"gtol": -1.0}])
def test_explicit_out_of_range_options_are_rejected(options, global_g):
    a = build_ansatz(3, 1, global_g)
    with pytest.raises(InvalidOptionError):
        fit(a, CCPHASE, np.zeros(a.n_params), **options)


def test_non_finite_start_aborts(global_g):
    a = build_ansatz(3, 1, global_g)
    x0 = np.zeros(a.n_params)
    x0[0] = np.nan
    with pytest.raises(OptimizationAborted):
        fit(a, CCPHASE, x0)


def test_optimize_once_is_deterministic(global_g, rng):
    problem = SynthesisProblem(target_name=TargetName.CCPHASE, coupler=global_g, max_entanglers=2)
    x0 = rng.uniform(0, 2 * np.pi, build_ansatz(3, 2, global_g).n_params)
    first = optimize_once(problem, 2, x0)
    second = optimize_once(problem, 2, x0)
    np.testing.assert_array_equal(first.params, second.params)
    assert first.objective == second.objective
