import numpy as np
import pytest

from globalgates.core.catalog import catalog_circuit
from globalgates.core.circuit import entangler_count, verify
from globalgates.core.errors import InvalidOptionError
from globalgates.core.targets import target_matrix
from globalgates.enums import CouplerKind, FinalLayer, GateKind, TargetName
from globalgates.schemas.synthesis import CouplerModel, SynthesisProblem, SynthesisResult
from globalgates.synthesis import optimizer
from globalgates.synthesis.search import load_problem, refine_template, save_result, synthesize


def _problem(target, coupler, **fields):
    fields.setdefault("seed", 42)
    fields.setdefault("tolerance", 1e-6)
    return SynthesisProblem(target_name=target, coupler=coupler, **fields)


def test_cphase_needs_one_pair_coupler(pair_coupler):
    result = synthesize(_problem(TargetName.CPHASE, pair_coupler, max_entanglers=1, restarts_per_count=16))
    assert result.converged
    assert result.entangler_count == 1
    assert verify(result.circuit, target_matrix("cphase"), result.tolerance).passed


def test_zero_entanglers_cannot_make_cphase(pair_coupler):
    result = synthesize(_problem(TargetName.CPHASE, pair_coupler, min_entanglers=0, max_entanglers=0, restarts_per_count=4))
    assert not result.converged
    assert result.circuit.name.endswith("-unconverged")
    assert [a.n_entanglers for a in result.attempts] == [0]


def test_result_is_independent_of_worker_count(global_g):
    problem = _problem(TargetName.CCPHASE, global_g, max_entanglers=1, restarts_per_count=6)
    serial = synthesize(problem, workers=1, batch_size=2)
    threaded = synthesize(problem, workers=3, batch_size=2)
    assert serial.model_dump() == threaded.model_dump()
    assert serial.restarts_used == 6


def test_same_seed_same_result(global_g):
    problem = _problem(TargetName.CCPHASE, global_g, max_entanglers=1, restarts_per_count=3)
    assert synthesize(problem).model_dump() == synthesize(problem).model_dump()


def test_problem_validation(global_g):
    with pytest.raises(ValueError):
        SynthesisProblem(coupler=global_g, max_entanglers=2)
    with pytest.raises(ValueError):
        _problem(TargetName.CNOT, global_g, max_entanglers=2)
    with pytest.raises(ValueError):
        _problem(TargetName.CCPHASE, global_g, min_entanglers=3, max_entanglers=2)
    with pytest.raises(ValueError):
        CouplerModel(kind=CouplerKind.GLOBAL_GG, n_qubits=3)


def test_problem_and_result_files(tmp_path, pair_coupler):
    problem = _problem(TargetName.CPHASE, pair_coupler, max_entanglers=1, restarts_per_count=4)
    problem_path = tmp_path / "problem.json"
    problem_path.write_text(problem.model_dump_json(), encoding="utf-8")
    loaded = load_problem(problem_path)
    np.testing.assert_array_equal(loaded.target, problem.target)
    assert loaded.coupler == problem.coupler

    result = synthesize(loaded)
    path = save_result(tmp_path / "result.json", result)
    again = SynthesisResult.model_validate_json(path.read_text(encoding="utf-8"))
    assert again.circuit.ops == result.circuit.ops
    assert again.residual_aligned == result.residual_aligned


def test_solver_failure_counts_as_aborted_restart(pair_coupler, monkeypatch):
    real_solver = optimizer.least_squares
    calls = []

    def fail_first(*args, **kwargs):
        calls.append(1)
        if len(calls) == 1:
            raise np.linalg.LinAlgError("SVD did not converge")
        return real_solver(*args, **kwargs)

    monkeypatch.setattr(optimizer, "least_squares", fail_first)
    result = synthesize(_problem(TargetName.CPHASE, pair_coupler, max_entanglers=1, restarts_per_count=16), workers=1)
    assert result.converged
    assert result.attempts[0].aborted == 1


def test_search_survives_when_every_start_fails(pair_coupler, monkeypatch):
    def always_fail(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr(optimizer, "least_squares", always_fail)
    result = synthesize(_problem(TargetName.CPHASE, pair_coupler, max_entanglers=1, restarts_per_count=4))
    assert not result.converged
    assert result.attempts[0].aborted == 4
    assert result.attempts[0].best_residual is None


@pytest.mark.parametrize("options", [{"workers": 0}, {"batch_size": 0}])
def test_zero_workers_or_batch_is_rejected(options, pair_coupler):
    with pytest.raises(InvalidOptionError):
        synthesize(_problem(TargetName.CPHASE, pair_coupler, max_entanglers=1, restarts_per_count=4), **options)


@pytest.mark.slow
def test_ccphase_over_global_g_needs_three(global_g):
    result = synthesize(_problem(TargetName.CCPHASE, global_g, max_entanglers=3, restarts_per_count=200))
    assert result.converged
    assert result.entangler_count == 3
    assert [a.converged for a in result.attempts] == [False, False, True]
    assert verify(result.circuit, target_matrix("ccphase"), 1e-6).passed


@pytest.mark.slow
def test_ccphase_over_global_g_fails_with_two(global_g):
    result = synthesize(
        _problem(TargetName.CCPHASE, global_g, min_entanglers=2, max_entanglers=2, restarts_per_count=500)
    )
    assert not result.converged
    assert result.restarts_used == 500


@pytest.mark.slow
def test_ccphase_over_nearest_n_needs_five():
    coupler = CouplerModel.default_for(CouplerKind.NEAREST_N)
    result = synthesize(
        _problem(TargetName.CCPHASE, coupler, min_entanglers=4, max_entanglers=5, restarts_per_count=200)
    )
    assert result.converged
    assert result.entangler_count == 5


@pytest.mark.slow
def test_fredkin_over_nearest_n_with_five():
    coupler = CouplerModel.default_for(CouplerKind.NEAREST_N)
    result = synthesize(
        _problem(
            TargetName.FREDKIN,
            coupler,
            min_entanglers=5,
            max_entanglers=5,
            restarts_per_count=200,
            final_layer=FinalLayer.FULL,
        )
    )
    assert result.converged
    assert result.entangler_count == 5


@pytest.mark.slow
def test_cccphase_with_one_pair_gate_needs_six():
    coupler = CouplerModel.default_for(CouplerKind.GLOBAL_GG)
    result = synthesize(
        _problem(
            TargetName.CCCPHASE,
            coupler,
            min_entanglers=6,
            max_entanglers=6,
            restarts_per_count=200,
            allow_one_nonglobal=True,
        )
    )
    assert result.converged
    assert result.entangler_count == 6
    kinds = [op.kind for op in result.circuit.ops if op.is_entangler]
    assert kinds.count(GateKind.ISING_ZZ) <= 1


@pytest.mark.slow
def test_refine_unequal_coupling_angles(unequal_coupler):
    circuit = catalog_circuit("ccphase-unequal-J")
    result = refine_template(circuit, target_matrix("ccphase"), unequal_coupler, (0,), tolerance=1e-6, restarts=50, seed=42)
    assert result.converged
    assert result.residual_aligned < 1e-6
    assert entangler_count(result.circuit) == 3
    # Qubits 1 and 2 keep pure phases only.
    assert all(op.kind in (GateKind.PHASE, GateKind.COUPLING_U) for op in result.circuit.ops if op.qubits[0] != 0)
