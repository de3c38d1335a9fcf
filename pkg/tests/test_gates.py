import itertools

import numpy as np
import pytest
from scipy.linalg import expm

from globalgates.core import gates as g
from globalgates.core.errors import GateDefinitionError
from globalgates.core.gates import (
    HADAMARD,
    S_GATE,
    SIGMA_X,
    SIGMA_Z,
    T_GATE,
    collective_spin,
    gate_matrix,
    phase_matrix,
    pulse_matrix,
)
from globalgates.core.tensor import embed, is_unitary, kron, kron_all, phase_aligned_distance, raw_distance
from globalgates.schemas.gate_op import GateOp

PAULIS = {"x": SIGMA_X, "y": np.array([[0, -1j], [1j, 0]]), "z": SIGMA_Z}


def test_phase_zero_is_identity():
    np.testing.assert_array_equal(gate_matrix(g.phase(0, 0.0), 1), np.eye(2))


def test_hadamard_matrix():
    np.testing.assert_allclose(gate_matrix(g.hadamard(0), 1), np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_global_g_diagonal():
    phi = np.pi / 4
    c = np.array([3, -1, -1, -1, -1, -1, -1, 3])
    np.testing.assert_allclose(gate_matrix(g.global_g(phi), 3), np.diag(np.exp(1j * phi * c)), atol=1e-15)


def test_nearest_n_uses_chain_pairs():
    phi = 0.41
    c = np.array([2, 0, -2, 0, 0, -2, 0, 2])
    np.testing.assert_allclose(gate_matrix(g.nearest_n(phi), 3), np.diag(np.exp(1j * phi * c)), atol=1e-15)


def test_global_gg_is_six_pair_sum():
    m = gate_matrix(g.global_gg(np.pi / 4), 4)
    assert m[0, 0] == pytest.approx(np.exp(1j * 6 * np.pi / 4))
    assert m[15, 15] == pytest.approx(np.exp(1j * 6 * np.pi / 4))


@pytest.mark.parametrize(
    "relation, lhs, rhs",
    [
        ("x", SIGMA_X, pulse_matrix(np.pi)),
        ("s", S_GATE, phase_matrix(np.pi / 4)),
        ("t", T_GATE, phase_matrix(np.pi / 8)),
        ("h", HADAMARD, phase_matrix(np.pi / 4) @ pulse_matrix(np.pi / 2) @ phase_matrix(np.pi / 4)),
        ("xz", HADAMARD @ SIGMA_Z @ HADAMARD, SIGMA_X),
        ("zz", kron(HADAMARD, HADAMARD) @ kron(SIGMA_X, SIGMA_X) @ kron(HADAMARD, HADAMARD), kron(SIGMA_Z, SIGMA_Z)),
        ("pulse", HADAMARD @ phase_matrix(0.7) @ HADAMARD, pulse_matrix(1.4)),
    ],
)
def test_standard_gate_relations(relation, lhs, rhs):
    assert phase_aligned_distance(lhs, rhs) < 1e-12


@pytest.mark.parametrize("alpha", [0.1, np.pi / 7, np.pi / 4])
def test_hadamard_turns_zz_rotation_into_xx(alpha):
    hh = kron(HADAMARD, HADAMARD)
    lhs = hh @ expm(-1j * alpha * kron(SIGMA_Z, SIGMA_Z)) @ hh
    rhs = expm(-1j * alpha * kron(SIGMA_X, SIGMA_X))
    assert raw_distance(lhs, rhs) < 1e-12


@pytest.mark.parametrize("alpha", [0.1, np.pi / 7, np.pi / 4])
def test_hadamard_turns_z_rotation_into_x(alpha):
    lhs = HADAMARD @ expm(-1j * alpha * SIGMA_Z) @ HADAMARD
    assert raw_distance(lhs, expm(-1j * alpha * SIGMA_X)) < 1e-12
    assert raw_distance(lhs, pulse_matrix(2 * alpha)) < 1e-12


def test_exact_phase_factors():
    np.testing.assert_allclose(SIGMA_X, 1j * pulse_matrix(np.pi), atol=1e-15)
    np.testing.assert_allclose(S_GATE, np.exp(1j * np.pi / 4) * phase_matrix(np.pi / 4), atol=1e-15)
    np.testing.assert_allclose(T_GATE, np.exp(1j * np.pi / 8) * phase_matrix(np.pi / 8), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("beta", ["x", "y", "z"])
def test_collective_spin_square(n, beta):
    j = collective_spin(n, beta)
    pairs = sum(embed(kron(PAULIS[beta], PAULIS[beta]), [a, b], n) for a, b in itertools.combinations(range(n), 2))
    np.testing.assert_allclose(j @ j, n / 4 * np.eye(1 << n) + 0.5 * pairs, atol=1e-13)


def test_collective_spin_rejects_unknown_axis():
    with pytest.raises(GateDefinitionError):
        collective_spin(3, "w")


def test_decompose_global_g_any_order(rng):
    for phi in [0.0, np.pi / 4, rng.uniform(0, 2 * np.pi)]:
        factors = [gate_matrix(op, 3) for op in g.decompose_G_as_pair_product(phi)]
        target = gate_matrix(g.global_g(phi), 3)
        for order in itertools.permutations(factors):
            assert raw_distance(order[2] @ order[1] @ order[0], target) < 1e-13


def test_decompose_zero_gives_identity_factors():
    for op in g.decompose_G_as_pair_product(0.0):
        np.testing.assert_array_equal(gate_matrix(op, 3), np.eye(8))


def test_coupling_u_for_angle_matches_global_g_for_uniform_j():
    j = 0.7 * (np.ones((3, 3)) - np.eye(3))
    op = g.coupling_u_for_angle(j, np.pi / 8)
    assert raw_distance(gate_matrix(op, 3), gate_matrix(g.global_g(np.pi / 8), 3)) < 1e-13


def test_every_kind_is_unitary(rng):
    ops = [
        g.pauli_x(1), g.hadamard(0), g.s_gate(2), g.t_gate(1), g.t_dagger(0),
        g.pulse(2, rng.uniform(0, 6)), g.phase(1, rng.uniform(0, 6)),
        g.cnot(2, 0), g.cphase(0, 2), g.ising_zz(1, 2, 0.3),
        g.global_g(0.2), g.nearest_n(0.5), g.coupling_u([[0, 1, 2], [1, 0, 3], [2, 3, 0]], 0.9),
    ]
    for op in ops:
        assert is_unitary(gate_matrix(op, 3))
    assert is_unitary(gate_matrix(g.global_gg(1.1), 4))


@pytest.mark.parametrize(
    "fields",
    [
        {"kind": "GlobalG", "qubits": (0, 1), "angle": 0.1},
        {"kind": "GlobalGG", "qubits": (0, 1, 2), "angle": 0.1},
        {"kind": "Pulse", "qubits": (0,)},
        {"kind": "Hadamard", "qubits": (0,), "angle": 0.1},
        {"kind": "CNOT", "qubits": (1, 1)},
        {"kind": "CouplingU", "qubits": (0, 1), "angle": 1.0, "couplings": ((0, 1), (2, 0))},
        {"kind": "Phase", "qubits": (0,), "angle": float("nan")},
    ],
)
def test_malformed_ops_are_rejected(fields):
    with pytest.raises(ValueError):
        GateOp(**fields)


def test_kron_all_of_pulses_matches_embedded_product():
    theta = [0.1, 0.2, 0.3]
    product = np.eye(8)
    for q, t in enumerate(theta):
        product = gate_matrix(g.pulse(q, t), 3) @ product
    np.testing.assert_allclose(kron_all([pulse_matrix(t) for t in theta]), product, atol=1e-15)
