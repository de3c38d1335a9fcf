"""
Matrices of every named gate, and GateOp constructors.

Conventions:
- Pulse(theta) = exp(-i theta/2 sigma_x); P = Pulse(pi/2), Q = Pulse(pi/4).
- Phase(phi) = exp(-i phi sigma_z).
- Entanglers are diagonal: with spin signs s (+1 for |0>, -1 for |1>),
  GlobalG(phi) multiplies a basis state by exp(i phi sum_{j<k} s_j s_k).
"""
import itertools
from typing import Sequence

import numpy as np

from globalgates.core.errors import GateDefinitionError, QubitIndexError
from globalgates.core.tensor import embed, spin_signs
from globalgates.enums import GateKind
from globalgates.schemas.gate_op import GateOp

SQRT_HALF = 1.0 / np.sqrt(2.0)

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=np.complex128)
S_GATE = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
T_GATE = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=np.complex128)
SQRT_NOT = SQRT_HALF * np.array([[1, 1j], [1j, 1]], dtype=np.complex128)

CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)
CPHASE_MATRIX = np.diag([1, 1, 1, -1]).astype(np.complex128)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

_FIXED_SINGLE = {
    GateKind.PAULI_X: SIGMA_X,
    GateKind.PAULI_Y: SIGMA_Y,
    GateKind.PAULI_Z: SIGMA_Z,
    GateKind.HADAMARD: HADAMARD,
    GateKind.S: S_GATE,
    GateKind.T: T_GATE,
    GateKind.T_DAGGER: np.conj(T_GATE).T,
    GateKind.SQRT_NOT: SQRT_NOT,
}


def pulse_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def phase_matrix(phi: float) -> np.ndarray:
    return np.diag([np.exp(-1j * phi), np.exp(1j * phi)])


def pair_sign_sum(n: int, pairs: Sequence[tuple[int, int]], weights: Sequence[float] | None = None) -> np.ndarray:
    """Length-2**n vector of sum_w w * s_j s_k over the given qubit pairs."""
    signs = spin_signs(n)
    total = np.zeros(1 << n)
    for idx, (j, k) in enumerate(pairs):
        w = 1.0 if weights is None else weights[idx]
        total = total + w * signs[j] * signs[k]
    return total


def all_pairs(qubits: Sequence[int]) -> list[tuple[int, int]]:
    return list(itertools.combinations(qubits, 2))


def chain_pairs(qubits: Sequence[int]) -> list[tuple[int, int]]:
    return list(zip(qubits[:-1], qubits[1:]))


def entangler_sign_sum(op: GateOp, n: int) -> np.ndarray:
    """
    Vector c such that the entangler is diag(exp(i angle * c)).

    For CouplingU the angle is the duration tau and c = (1/2) sum J_jk s_j s_k.
    """
    q = op.qubits
    if op.kind == GateKind.GLOBAL_G or op.kind == GateKind.GLOBAL_GG:
        return pair_sign_sum(n, all_pairs(q))
    if op.kind == GateKind.NEAREST_N:
        return pair_sign_sum(n, chain_pairs(q))
    if op.kind == GateKind.ISING_ZZ:
        return pair_sign_sum(n, [(q[0], q[1])])
    if op.kind == GateKind.COUPLING_U:
        j = op.couplings
        pairs, weights = [], []
        for a, b in itertools.combinations(range(len(q)), 2):
            pairs.append((q[a], q[b]))
            weights.append(0.5 * j[a][b])
        return pair_sign_sum(n, pairs, weights)
    raise GateDefinitionError(f"{op.kind.value} is not a diagonal entangler")


def gate_matrix(op: GateOp, n: int) -> np.ndarray:
    """The 2**n x 2**n unitary of op embedded among n qubits."""
    if any(q >= n for q in op.qubits):
        raise QubitIndexError(f"{op.kind.value} on {op.qubits} does not fit {n} qubit(s)")

    kind = op.kind
    if kind in _FIXED_SINGLE:
        return embed(_FIXED_SINGLE[kind], op.qubits, n)
    if kind == GateKind.PULSE:
        return embed(pulse_matrix(op.angle), op.qubits, n)
    if kind == GateKind.PHASE:
        return embed(phase_matrix(op.angle), op.qubits, n)
    if kind == GateKind.CNOT:
        return embed(CNOT_MATRIX, op.qubits, n)
    if kind == GateKind.CPHASE:
        return embed(CPHASE_MATRIX, op.qubits, n)
    return np.diag(np.exp(1j * op.angle * entangler_sign_sum(op, n)))


# --------------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------------
def pauli_x(q: int) -> GateOp:
    return GateOp(kind=GateKind.PAULI_X, qubits=(q,))


def hadamard(q: int) -> GateOp:
    return GateOp(kind=GateKind.HADAMARD, qubits=(q,))


def s_gate(q: int) -> GateOp:
    return GateOp(kind=GateKind.S, qubits=(q,))


def t_gate(q: int) -> GateOp:
    return GateOp(kind=GateKind.T, qubits=(q,))


def t_dagger(q: int) -> GateOp:
    return GateOp(kind=GateKind.T_DAGGER, qubits=(q,))


def pulse(q: int, theta: float = np.pi / 2) -> GateOp:
    return GateOp(kind=GateKind.PULSE, qubits=(q,), angle=theta)


def phase(q: int, phi: float) -> GateOp:
    return GateOp(kind=GateKind.PHASE, qubits=(q,), angle=phi)


def cnot(control: int, target: int) -> GateOp:
    return GateOp(kind=GateKind.CNOT, qubits=(control, target))


def cphase(a: int, b: int) -> GateOp:
    return GateOp(kind=GateKind.CPHASE, qubits=(a, b))


def ising_zz(a: int, b: int, phi: float) -> GateOp:
    return GateOp(kind=GateKind.ISING_ZZ, qubits=(a, b), angle=phi)


def global_g(phi: float, qubits: Sequence[int] = (0, 1, 2)) -> GateOp:
    return GateOp(kind=GateKind.GLOBAL_G, qubits=tuple(qubits), angle=phi)


def global_gg(phi: float, qubits: Sequence[int] = (0, 1, 2, 3)) -> GateOp:
    return GateOp(kind=GateKind.GLOBAL_GG, qubits=tuple(qubits), angle=phi)


def nearest_n(phi: float, qubits: Sequence[int] = (0, 1, 2)) -> GateOp:
    return GateOp(kind=GateKind.NEAREST_N, qubits=tuple(qubits), angle=phi)


def coupling_u(couplings, tau: float, qubits: Sequence[int] | None = None) -> GateOp:
    j = np.asarray(couplings, dtype=float)
    if qubits is None:
        qubits = range(j.shape[0])
    return GateOp(
        kind=GateKind.COUPLING_U,
        qubits=tuple(qubits),
        angle=tau,
        couplings=tuple(tuple(float(x) for x in row) for row in j),
    )


def decompose_G_as_pair_product(phi: float, qubits: Sequence[int] = (0, 1, 2)) -> list[GateOp]:
    """GlobalG(phi) as three commuting exp(i phi s_j s_k) factors."""
    if len(qubits) != 3:
        raise GateDefinitionError("GlobalG acts on exactly 3 qubits")
    return [ising_zz(a, b, phi) for a, b in all_pairs(qubits)]


def collective_spin(n: int, beta: str) -> np.ndarray:
    """J_beta = (1/2) sum_k sigma_k^beta on n qubits."""
    try:
        sigma = PAULI[beta]
    except KeyError:
        raise GateDefinitionError(f"unknown spin axis {beta!r}; expected x, y or z") from None
    return 0.5 * sum(embed(sigma, [k], n) for k in range(n))


def coupling_u_for_angle(couplings, phi: float, qubits: Sequence[int] | None = None) -> GateOp:
    """U(phi) = free evolution for tau = 2 phi / J_01, the G-gate analogue for unequal couplings."""
    j = np.asarray(couplings, dtype=float)
    if j[0, 1] == 0:
        raise GateDefinitionError("couplings[0][1] sets the angle scale and must be nonzero")
    return coupling_u(j, 2 * phi / j[0, 1], qubits)
