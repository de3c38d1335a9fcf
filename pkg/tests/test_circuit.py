import numpy as np
import pytest

from globalgates.core import gates as g
from globalgates.core.catalog import catalog_circuit, ccphase_global_3g
from globalgates.core.circuit import evaluate, layers, phase_gate_count, phase_groups, verify
from globalgates.core.errors import DimensionMismatchError
from globalgates.core.gates import gate_matrix
from globalgates.core.targets import target_matrix
from globalgates.core.tensor import is_unitary
from globalgates.schemas.circuit import Circuit


def _circuit(n, *ops):
    return Circuit(n_qubits=n, ops=tuple(ops))


def test_empty_circuit_is_identity():
    np.testing.assert_array_equal(evaluate(_circuit(3)), np.eye(8))


def test_single_global_g():
    np.testing.assert_array_equal(evaluate(_circuit(3, g.global_g(np.pi / 4))), gate_matrix(g.global_g(np.pi / 4), 3))


def test_time_order_is_reversed_into_product():
    u = evaluate(_circuit(1, g.pulse(0, 0.3), g.phase(0, 0.5)))
    np.testing.assert_allclose(u, g.phase_matrix(0.5) @ g.pulse_matrix(0.3))


def test_concatenation_law(rng):
    a = _circuit(3, g.pulse(0, rng.uniform()), g.global_g(0.4), g.phase(2, 0.1))
    b = _circuit(3, g.nearest_n(0.7), g.pulse(1, 0.2), g.cnot(2, 0))
    np.testing.assert_allclose(evaluate(a.then(b)), evaluate(b) @ evaluate(a), atol=1e-14)


def test_then_rejects_other_widths():
    with pytest.raises(ValueError):
        _circuit(3).then(_circuit(2))


def test_phase_commutes_with_entanglers():
    for entangler in (g.global_g(0.3), g.nearest_n(0.9), g.ising_zz(0, 2, 1.2)):
        before = evaluate(_circuit(3, g.phase(1, 0.6), entangler))
        after = evaluate(_circuit(3, entangler, g.phase(1, 0.6)))
        np.testing.assert_allclose(before, after, atol=1e-15)


def test_verify_ccphase_sequence():
    report = verify(ccphase_global_3g(), target_matrix("ccphase"), 1e-10)
    assert report.passed
    assert report.aligned_distance < 1e-10
    assert report.aligned_distance <= report.raw_distance


def test_verify_empty_against_toffoli_fails():
    report = verify(_circuit(3), target_matrix("toffoli"), 1e-10)
    assert not report.passed
    assert report.aligned_distance > 1


def test_verify_against_own_matrix(rng):
    c = _circuit(2, g.pulse(0, rng.uniform(0, 6)), g.cphase(0, 1), g.phase(1, 0.2))
    assert verify(c, evaluate(c), 1e-12).passed


def test_verify_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        verify(_circuit(2), target_matrix("ccphase"))


def test_circuit_rejects_out_of_range_qubits():
    with pytest.raises(ValueError):
        _circuit(2, g.pulse(2))


def test_layers_pack_parallel_ops():
    c = _circuit(3, g.pulse(0), g.pulse(1), g.global_g(0.1), g.phase(2, 0.1), g.phase(0, 0.2))
    assert layers(c) == [[0, 1], [2], [3, 4]]


def test_ccphase_phase_groups():
    c = ccphase_global_3g()
    assert phase_gate_count(c) == 4
    assert phase_groups(c) == 2


def test_catalog_circuits_are_unitary():
    assert is_unitary(evaluate(catalog_circuit("cccphase-global-7GG")), 1e-11)
