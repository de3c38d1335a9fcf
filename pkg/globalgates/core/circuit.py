"""
Circuit evaluation, verification and greedy layer analysis.

Circuits are stored in time order; evaluate() is the only place where that
order is reversed into a matrix product U = M_k ... M_2 M_1.
"""
import logging

import numpy as np

from globalgates.core.config import get_settings
from globalgates.core.errors import DimensionMismatchError
from globalgates.core.gates import gate_matrix
from globalgates.core.tensor import aligned_distance_and_phase, raw_distance
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.gate_op import PHASE_TYPE_KINDS
from globalgates.schemas.verification import VerificationReport

logger = logging.getLogger(__name__)


def evaluate(circuit: Circuit) -> np.ndarray:
    """Unitary of the whole circuit."""
    dim = 1 << circuit.n_qubits
    u = np.eye(dim, dtype=np.complex128)
    for op in circuit.ops:
        u = gate_matrix(op, circuit.n_qubits) @ u
    return u


def verify(circuit: Circuit, target, tol: float | None = None) -> VerificationReport:
    """Compare evaluate(circuit) with target, modulo global phase."""
    if tol is None:
        tol = get_settings().EQUALITY_TOLERANCE
    target = np.asarray(target, dtype=np.complex128)
    dim = 1 << circuit.n_qubits
    if target.shape != (dim, dim):
        logger.error(
            "verify: target shape %s does not match %d-qubit circuit", target.shape, circuit.n_qubits
        )
        raise DimensionMismatchError(
            f"target of shape {target.shape} does not match a {circuit.n_qubits}-qubit circuit"
        )

    u = evaluate(circuit)
    aligned, theta = aligned_distance_and_phase(target, u)
    report = VerificationReport(
        aligned_distance=aligned,
        raw_distance=raw_distance(target, u),
        passed=aligned < tol,
        aligning_phase=theta,
        tolerance=tol,
    )
    logger.debug(
        "verify: circuit=%s aligned=%.3e raw=%.3e passed=%s",
        circuit.name,
        report.aligned_distance,
        report.raw_distance,
        report.passed,
    )
    return report


def concatenate(first: Circuit, second: Circuit) -> Circuit:
    return first.then(second)


def layers(circuit: Circuit) -> list[list[int]]:
    """
    Greedy left-packing of ops into parallel layers.

    Each op lands in the earliest layer after the last one touching any of its
    qubits. Returns op indices per layer.
    """
    frontier = [0] * circuit.n_qubits
    packed: list[list[int]] = []
    for index, op in enumerate(circuit.ops):
        depth = max(frontier[q] for q in op.qubits)
        if depth == len(packed):
            packed.append([])
        packed[depth].append(index)
        for q in op.qubits:
            frontier[q] = depth + 1
    return packed


def entangler_count(circuit: Circuit) -> int:
    return sum(1 for op in circuit.ops if op.is_entangler)


def phase_gate_count(circuit: Circuit) -> int:
    return sum(1 for op in circuit.ops if op.kind in PHASE_TYPE_KINDS)


def phase_groups(circuit: Circuit) -> int:
    """Number of packed layers holding at least one phase-type gate (T-depth analogue)."""
    return sum(
        1
        for layer in layers(circuit)
        if any(circuit.ops[i].kind in PHASE_TYPE_KINDS for i in layer)
    )
