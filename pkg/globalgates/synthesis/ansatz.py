"""
Parametrized circuit template for the entangler-count search.

Time order:

    L_1 B(phi_1) L_2 B(phi_2) ... L_NG B(phi_NG) [L_full] Z_final

Each local layer L applies, per qubit, Phase(a) then Pulse(theta) (then
Phase(b) when trailing phases are explicit). Z_final is a per-qubit phase
layer; L_full, present for FinalLayer.FULL, is one more Phase·Pulse pair per
qubit before it. With no entanglers the template is one local layer followed
by the final phases.

Parameter layout: local layers (layer, qubit, {a, theta[, b]}), entangler
angles, [final pulse layer (qubit, {a, theta})], final phases (qubit).
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from globalgates.core import gates as g
from globalgates.core.errors import DimensionMismatchError, GateDefinitionError
from globalgates.core.gates import SIGMA_X, SIGMA_Z, all_pairs, chain_pairs, pair_sign_sum, phase_matrix, pulse_matrix
from globalgates.core.tensor import kron_all, spin_signs
from globalgates.enums import CouplerKind, FinalLayer, GateKind
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.gate_op import ENTANGLER_KINDS, GateOp
from globalgates.schemas.synthesis import CouplerModel

logger = logging.getLogger(__name__)

NONGLOBAL_PAIR = (0, 1)
OFF_DIAGONAL_TOLERANCE = 1e-9


def _local_element(values: Sequence[float]) -> tuple[np.ndarray, List[np.ndarray]]:
    """u = [Phase(b)] Pulse(theta) Phase(a) and its derivatives in (a, theta[, b]) order."""
    a, theta = values[0], values[1]
    pa, pt = phase_matrix(a), pulse_matrix(theta)
    pb = phase_matrix(values[2]) if len(values) > 2 else np.eye(2, dtype=np.complex128)
    u = pb @ pt @ pa
    derivs = [
        u @ (-1j * SIGMA_Z),
        pb @ (-0.5j * SIGMA_X) @ pt @ pa,
    ]
    if len(values) > 2:
        derivs.append(-1j * SIGMA_Z @ u)
    return u, derivs


class Ansatz:
    """
    Layout and fast evaluation of one template.

    Construction is cheap; unitary() and jacobian() work directly on the
    2**n x 2**n matrices without building GateOps.
    """

    def __init__(
        self,
        coupler: CouplerModel,
        n_entanglers: int,
        *,
        final_layer: FinalLayer = FinalLayer.PHASE,
        explicit_trailing_phases: bool = False,
        nonglobal_slot: Optional[int] = None,
    ):
        if n_entanglers < 0:
            raise GateDefinitionError(f"n_entanglers must be >= 0, got {n_entanglers}")
        if nonglobal_slot is not None and not 0 <= nonglobal_slot < n_entanglers:
            raise GateDefinitionError(f"nonglobal_slot {nonglobal_slot} outside 0..{n_entanglers - 1}")

        self.coupler = coupler
        self.n_qubits = coupler.n_qubits
        self.n_entanglers = n_entanglers
        self.final_layer = FinalLayer(final_layer)
        self.explicit_trailing_phases = explicit_trailing_phases
        self.nonglobal_slot = nonglobal_slot

        n = self.n_qubits
        self.width = 3 if explicit_trailing_phases else 2
        self.n_layers = max(n_entanglers, 1)

        offset = 0
        self.local_slice = slice(offset, offset + self.n_layers * n * self.width)
        offset = self.local_slice.stop
        self.entangler_slice = slice(offset, offset + n_entanglers)
        offset = self.entangler_slice.stop
        final_pulse = 2 * n if self.final_layer == FinalLayer.FULL else 0
        self.final_pulse_slice = slice(offset, offset + final_pulse)
        offset = self.final_pulse_slice.stop
        self.final_phase_slice = slice(offset, offset + n)
        self.n_params = self.final_phase_slice.stop

        self._dim = 1 << n
        self._signs = spin_signs(n).astype(float)
        self._generators = [self._entangler_generator(k) for k in range(n_entanglers)]

    # ------------------------------------------------------------------
    # Layout
    # ------------------------------------------------------------------
    def _entangler_generator(self, slot: int) -> np.ndarray:
        """Vector c with B(phi) = diag(exp(i phi c))."""
        n = self.n_qubits
        if slot == self.nonglobal_slot:
            return pair_sign_sum(n, [NONGLOBAL_PAIR])
        kind = self.coupler.kind
        if kind == CouplerKind.NEAREST_N:
            return pair_sign_sum(n, chain_pairs(range(n)))
        if kind == CouplerKind.COUPLING_U:
            j = np.asarray(self.coupler.couplings, dtype=float)
            pairs = all_pairs(range(n))
            return pair_sign_sum(n, pairs, [j[a, b] / j[0, 1] for a, b in pairs])
        return pair_sign_sum(n, all_pairs(range(n)))

    def local_index(self, layer: int, qubit: int, slot: int) -> int:
        return self.local_slice.start + (layer * self.n_qubits + qubit) * self.width + slot

    def final_pulse_index(self, qubit: int, slot: int) -> int:
        return self.final_pulse_slice.start + 2 * qubit + slot

    def parameter_names(self) -> List[str]:
        names = []
        local = ("a", "theta", "b")[: self.width]
        for layer in range(self.n_layers):
            for q in range(self.n_qubits):
                names.extend(f"L{layer + 1}.q{q}.{p}" for p in local)
        names.extend(f"B{k + 1}" for k in range(self.n_entanglers))
        if self.final_layer == FinalLayer.FULL:
            for q in range(self.n_qubits):
                names.extend(f"F.q{q}.{p}" for p in ("a", "theta"))
        names.extend(f"Z.q{q}" for q in range(self.n_qubits))
        return names

    def _check(self, params) -> np.ndarray:
        x = np.asarray(params, dtype=float)
        if x.shape != (self.n_params,):
            raise DimensionMismatchError(f"expected {self.n_params} parameters, got shape {x.shape}")
        return x

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------
    def _blocks(self, x: np.ndarray) -> list:
        """
        Time-ordered factors as ("local", elements, derivs, indices) or
        ("diag", vector, generators, indices).
        """
        n = self.n_qubits
        blocks = []
        local = x[self.local_slice].reshape(self.n_layers, n, self.width)
        for layer in range(self.n_layers):
            pairs = [_local_element(local[layer, q]) for q in range(n)]
            indices = [[self.local_index(layer, q, s) for s in range(self.width)] for q in range(n)]
            blocks.append(("local", [u for u, _ in pairs], [d for _, d in pairs], indices))
            if layer < self.n_entanglers:
                gen = self._generators[layer]
                phi = x[self.entangler_slice.start + layer]
                blocks.append(("diag", np.exp(1j * phi * gen), [gen], [self.entangler_slice.start + layer]))
        if self.final_layer == FinalLayer.FULL:
            values = x[self.final_pulse_slice].reshape(n, 2)
            pairs = [_local_element(values[q]) for q in range(n)]
            indices = [[self.final_pulse_index(q, s) for s in range(2)] for q in range(n)]
            blocks.append(("local", [u for u, _ in pairs], [d for _, d in pairs], indices))
        phases = x[self.final_phase_slice]
        gens = [-self._signs[q] for q in range(n)]
        exponent = -(phases @ self._signs)
        blocks.append(("diag", np.exp(1j * exponent), gens, list(range(self.final_phase_slice.start, self.n_params))))
        return blocks

    @staticmethod
    def _block_matrix(block) -> np.ndarray:
        if block[0] == "local":
            return kron_all(block[1])
        return np.diag(block[1])

    def unitary(self, params) -> np.ndarray:
        x = self._check(params)
        u = np.eye(self._dim, dtype=np.complex128)
        for block in self._blocks(x):
            if block[0] == "diag":
                u = block[1][:, None] * u
            else:
                u = kron_all(block[1]) @ u
        return u

    def jacobian(self, params) -> tuple[np.ndarray, np.ndarray]:
        """(U, dU) with dU[p] = dU/dparams[p], shape (n_params, 2**n, 2**n)."""
        x = self._check(params)
        blocks = self._blocks(x)
        matrices = [self._block_matrix(b) for b in blocks]

        before = [np.eye(self._dim, dtype=np.complex128)]
        for m in matrices:
            before.append(m @ before[-1])
        after = [np.eye(self._dim, dtype=np.complex128)] * len(matrices)
        for i in range(len(matrices) - 2, -1, -1):
            after[i] = after[i + 1] @ matrices[i + 1]

        grad = np.zeros((self.n_params, self._dim, self._dim), dtype=np.complex128)
        for i, block in enumerate(blocks):
            left, right = after[i], before[i]
            if block[0] == "diag":
                for gen, index in zip(block[2], block[3]):
                    grad[index] = left @ ((1j * gen * block[1])[:, None] * right)
                continue
            elements, derivs, indices = block[1], block[2], block[3]
            for q in range(self.n_qubits):
                for d, index in zip(derivs[q], indices[q]):
                    factors = list(elements)
                    factors[q] = d
                    grad[index] = left @ kron_all(factors) @ right
        return before[-1], grad

    # ------------------------------------------------------------------
    # Circuits
    # ------------------------------------------------------------------
    def entangler_op(self, slot: int, phi: float) -> GateOp:
        n = self.n_qubits
        if slot == self.nonglobal_slot:
            return g.ising_zz(*NONGLOBAL_PAIR, phi)
        kind = self.coupler.kind
        if kind == CouplerKind.GLOBAL_G:
            return g.global_g(phi, range(n))
        if kind == CouplerKind.GLOBAL_GG:
            return g.global_gg(phi, range(n))
        if kind == CouplerKind.NEAREST_N:
            return g.nearest_n(phi, range(n))
        return g.coupling_u_for_angle(self.coupler.couplings, phi)

    def to_circuit(self, params, name: Optional[str] = None) -> Circuit:
        """The template as explicit ops; exactly-zero local angles are omitted."""
        x = self._check(params)
        n = self.n_qubits
        ops: List[GateOp] = []

        def local_ops(q: int, values) -> List[GateOp]:
            out = []
            kinds = (g.phase, g.pulse, g.phase)
            for make, value in zip(kinds, values):
                if value != 0.0:
                    out.append(make(q, float(value)))
            return out

        local = x[self.local_slice].reshape(self.n_layers, n, self.width)
        for layer in range(self.n_layers):
            for q in range(n):
                ops.extend(local_ops(q, local[layer, q]))
            if layer < self.n_entanglers:
                ops.append(self.entangler_op(layer, float(x[self.entangler_slice.start + layer])))
        if self.final_layer == FinalLayer.FULL:
            values = x[self.final_pulse_slice].reshape(n, 2)
            for q in range(n):
                ops.extend(local_ops(q, values[q]))
        for q, value in enumerate(x[self.final_phase_slice]):
            if value != 0.0:
                ops.append(g.phase(q, float(value)))

        metadata = {"coupler": self.coupler.kind.value, "entanglers": str(self.n_entanglers)}
        if self.nonglobal_slot is not None:
            metadata["nonglobal_slot"] = str(self.nonglobal_slot)
        return Circuit(n_qubits=n, ops=tuple(ops), name=name, metadata=metadata)


def build_ansatz(
    n_qubits: int,
    n_entanglers: int,
    coupler: CouplerModel,
    *,
    final_layer: FinalLayer = FinalLayer.PHASE,
    explicit_trailing_phases: bool = False,
    nonglobal_slot: Optional[int] = None,
) -> Ansatz:
    if n_qubits != coupler.n_qubits:
        raise DimensionMismatchError(f"{coupler.kind.value} spans {coupler.n_qubits} qubits, not {n_qubits}")
    return Ansatz(
        coupler,
        n_entanglers,
        final_layer=final_layer,
        explicit_trailing_phases=explicit_trailing_phases,
        nonglobal_slot=nonglobal_slot,
    )


# --------------------------------------------------------------------------
# Encoding existing circuits into the layout
# --------------------------------------------------------------------------
def zxz_angles(u: np.ndarray) -> tuple[float, float, float]:
    """
    (alpha, theta, beta) with u = Phase(beta) Pulse(theta) Phase(alpha) up to
    a global phase; theta in [0, pi].
    """
    v = u / np.sqrt(np.linalg.det(u))
    theta = 2 * np.arctan2(abs(v[0, 1]), abs(v[0, 0]))
    total = -np.angle(v[0, 0]) if abs(v[0, 0]) > 1e-12 else 0.0
    diff = np.angle(v[0, 1]) + np.pi / 2 if abs(v[0, 1]) > 1e-12 else 0.0
    return float((total + diff) / 2), float(theta), float((total - diff) / 2)


def _entangler_parameter(op: GateOp) -> float:
    if op.kind == GateKind.COUPLING_U:
        return op.angle * op.couplings[0][1] / 2
    return op.angle


def encode_circuit(circuit: Circuit, ansatz: Ansatz) -> np.ndarray:
    """
    Parameters that make the ansatz reproduce circuit up to global phase.

    The circuit's entanglers must be diagonal and match the ansatz slots in
    number; every other op must act on one qubit. Phases left over after
    each local segment commute through the next entangler.
    """
    n = ansatz.n_qubits
    if circuit.n_qubits != n:
        raise DimensionMismatchError(f"circuit has {circuit.n_qubits} qubits, ansatz {n}")

    segments: List[List[GateOp]] = [[]]
    entanglers: List[GateOp] = []
    for op in circuit.ops:
        if op.kind in ENTANGLER_KINDS:
            entanglers.append(op)
            segments.append([])
        elif len(op.qubits) == 1:
            segments[-1].append(op)
        else:
            raise GateDefinitionError(f"{op.kind.value} cannot be encoded: not diagonal and not single-qubit")
    if len(entanglers) != ansatz.n_entanglers:
        raise GateDefinitionError(
            f"circuit has {len(entanglers)} entanglers, ansatz expects {ansatz.n_entanglers}"
        )

    def segment_unitary(ops: List[GateOp], q: int) -> np.ndarray:
        u = np.eye(2, dtype=np.complex128)
        for op in ops:
            if op.qubits[0] == q:
                u = g.gate_matrix(op.model_copy(update={"qubits": (0,)}), 1) @ u
        return u

    x = np.zeros(ansatz.n_params)
    carry = np.zeros(n)
    # With no entanglers the single segment still fills local layer 0.
    local_segments = segments[: ansatz.n_layers]
    for layer, ops in enumerate(local_segments):
        for q in range(n):
            u = segment_unitary(ops, q) @ phase_matrix(carry[q])
            alpha, theta, beta = zxz_angles(u)
            x[ansatz.local_index(layer, q, 0)] = alpha
            x[ansatz.local_index(layer, q, 1)] = theta
            if ansatz.explicit_trailing_phases:
                x[ansatz.local_index(layer, q, 2)] = beta
                carry[q] = 0.0
            else:
                carry[q] = beta
        if layer < ansatz.n_entanglers:
            x[ansatz.entangler_slice.start + layer] = _entangler_parameter(entanglers[layer])

    tail = segments[-1] if ansatz.n_entanglers > 0 else []
    for q in range(n):
        u = segment_unitary(tail, q) @ phase_matrix(carry[q])
        if ansatz.final_layer == FinalLayer.FULL:
            alpha, theta, beta = zxz_angles(u)
            x[ansatz.final_pulse_index(q, 0)] = alpha
            x[ansatz.final_pulse_index(q, 1)] = theta
            x[ansatz.final_phase_slice.start + q] = beta
            continue
        if abs(u[0, 1]) > OFF_DIAGONAL_TOLERANCE or abs(u[1, 0]) > OFF_DIAGONAL_TOLERANCE:
            raise GateDefinitionError(
                f"qubit {q}: ops after the last entangler are not diagonal; use the full final layer"
            )
        x[ansatz.final_phase_slice.start + q] = (np.angle(u[1, 1]) - np.angle(u[0, 0])) / 2
    logger.debug("encode_circuit: %s -> %d parameters", circuit.name, ansatz.n_params)
    return x
