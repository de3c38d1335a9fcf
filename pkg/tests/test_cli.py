import json

import numpy as np
import pytest

from globalgates import cli
from globalgates.cli import main, run
from globalgates.core import gates as g
from globalgates.core.gates import gate_matrix
from globalgates.core.tensor import pairs_to_matrix, phase_aligned_distance
from globalgates.enums import ExitCode


def test_verify_catalog_entry():
    result = run(["verify", "--catalog", "ccphase-global-3G", "--target", "ccphase"])
    assert result.exit_code == ExitCode.OK
    assert "PASS" in result.report
    assert result.data["report"]["aligned_distance"] < 1e-10


def test_verify_against_the_wrong_target():
    assert run(["verify", "--catalog", "ccphase-global-3G", "--target", "toffoli"]).exit_code == ExitCode.FAILED


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--circuit", "missing.qc.json", "--target", "toffoli"],
        ["verify", "--catalog", "ccphase-HT", "--circuit", "x.qc.json"],
        ["verify", "--catalog", "no-such-entry"],
        ["verify", "--catalog", "ccphase-HT", "--target", "swap"],
        ["synthesize", "--target", "ccphase", "--coupler", "ring", "--max-gates", "2"],
        ["physics", "sm-gate", "--g", "0.1", "--phi", "pi/4"],
        ["physics", "sm-gate", "--delta", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv):
    assert run(argv).exit_code == ExitCode.USAGE


def test_version_exits_cleanly():
    assert run(["--version"]).exit_code == ExitCode.OK


def test_export_then_verify_file(tmp_path):
    path = tmp_path / "fredkin.qc.json"
    assert run(["catalog", "export", "fredkin-global-4G", "--out", str(path)]).exit_code == ExitCode.OK
    result = run(["verify", "--circuit", str(path), "--target", "fredkin"])
    assert result.exit_code == ExitCode.OK


def test_catalog_list():
    result = run(["catalog", "list"])
    assert result.exit_code == ExitCode.OK
    keys = [row["key"] for row in result.data["entries"]]
    assert "cccphase-global-7GG" in keys
    assert len(keys) == 7


def test_synthesize_writes_circuit_on_convergence(tmp_path):
    out = tmp_path / "cphase.qc.json"
    result = run(
        ["synthesize", "--target", "cphase", "--coupler", "coupling-u", "--max-gates", "1",
         "--restarts", "16", "--seed", "42", "--out", str(out)]
    )
    assert result.exit_code == ExitCode.OK
    assert result.data["result"]["entangler_count"] == 1
    assert "seed:             42" in result.report
    assert out.exists()


def test_couplings_after_relabelling(tmp_path):
    out = tmp_path / "j.txt"
    result = run(["physics", "couplings", "--ions", "3", "--relabel", "2,1,3", "--out", str(out)])
    assert result.exit_code == ExitCode.OK
    j = np.array(result.data["dimensionless"])
    assert j[0, 1] == pytest.approx(j[0, 2], abs=1e-12)
    assert j[1, 2] != pytest.approx(j[0, 1])
    np.testing.assert_allclose(np.loadtxt(out), result.data["physical"], rtol=1e-15)


def test_couplings_from_config(tmp_path):
    config = tmp_path / "trap.json"
    config.write_text(json.dumps({"n_ions": 2, "gradient_b": 10.0}), encoding="utf-8")
    result = run(["physics", "couplings", "--config", str(config)])
    assert result.data["trap"]["gradient_b"] == 10.0
    assert len(result.data["physical"]) == 2


@pytest.mark.parametrize("angle", [["--g", "0.25"], ["--phi", "pi/4"]])
def test_sm_gate_is_global_g(angle, tmp_path):
    out = tmp_path / "gate.txt"
    result = run(["physics", "sm-gate", *angle, "--delta", "1", "--ions", "3", "--basis", "z", "--out", str(out)])
    assert result.exit_code == ExitCode.OK
    u = pairs_to_matrix(result.data["matrix"])
    assert phase_aligned_distance(u, gate_matrix(g.global_g(np.pi / 4), 3)) < 1e-12
    assert "pi/4" in result.report
    assert out.read_text(encoding="utf-8").startswith("# dim 8")


def test_fock_check_passes():
    result = run(["physics", "fock-check", "--g", "0.1", "--delta", "1", "--cutoff", "20"])
    assert result.exit_code == ExitCode.OK
    assert result.data["deviation"] < 1e-6


def test_fock_check_with_small_cutoff_is_a_config_error():
    assert run(["physics", "fock-check", "--g", "0.3", "--delta", "1", "--cutoff", "4"]).exit_code == ExitCode.USAGE


def test_main_prints_json(capsys):
    code = main(["--json", "verify", "--catalog", "ccphase-HT"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["exit_code"] == 0
    assert payload["data"]["target"] == "ccphase"


def test_main_prints_errors_to_stderr(capsys):
    assert main(["verify", "--catalog", "nope"]) == 2
    assert "unknown catalog key" in capsys.readouterr().err


def test_couplings_for_three_ions_put_the_central_ion_first():
    result = run(["physics", "couplings", "--ions", "3"])
    assert result.exit_code == ExitCode.OK
    assert result.data["relabel"] == [2, 1, 3]
    j = np.array(result.data["dimensionless"])
    assert j[0, 1] == pytest.approx(j[0, 2], abs=1e-12)
    assert j[1, 2] != pytest.approx(j[0, 1])
    trap_order = np.array(result.data["trap_order"])
    assert trap_order[0, 1] != pytest.approx(trap_order[0, 2])
    assert "trap order" in result.report


def test_couplings_can_keep_trap_order():
    result = run(["physics", "couplings", "--ions", "3", "--relabel", "1,2,3"])
    np.testing.assert_array_equal(result.data["dimensionless"], result.data["trap_order"])


@pytest.mark.parametrize(
    "extra",
    [["--restarts", "0"], ["--tol", "0"], ["--workers", "0"]],
)
def test_explicit_zero_options_are_usage_errors(extra):
    argv = ["synthesize", "--target", "cphase", "--coupler", "coupling-u", "--max-gates", "1", *extra]
    assert run(argv).exit_code == ExitCode.USAGE


def test_bad_phi_is_a_usage_error():
    assert run(["physics", "sm-gate", "--phi", "half"]).exit_code == ExitCode.USAGE


def test_solver_failure_is_an_internal_error(monkeypatch):
    def broken(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr(cli, "synthesize", broken)
    result = run(["synthesize", "--target", "cphase", "--coupler", "coupling-u", "--max-gates", "1"])
    assert result.exit_code == ExitCode.INTERNAL
    assert "SVD did not converge" in result.report


def test_unexpected_value_error_is_an_internal_error(monkeypatch):
    def broken():
        raise ValueError("catalog store corrupted")

    monkeypatch.setattr(cli, "catalog_keys", broken)
    assert run(["catalog", "list"]).exit_code == ExitCode.INTERNAL
