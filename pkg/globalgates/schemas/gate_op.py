import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from globalgates.enums import GateKind

SINGLE_QUBIT_KINDS = frozenset(
    {
        GateKind.PAULI_X,
        GateKind.PAULI_Y,
        GateKind.PAULI_Z,
        GateKind.HADAMARD,
        GateKind.S,
        GateKind.T,
        GateKind.T_DAGGER,
        GateKind.SQRT_NOT,
        GateKind.PULSE,
        GateKind.PHASE,
    }
)

# Diagonal in the computational basis, hence commuting with every Phase op.
ENTANGLER_KINDS = frozenset(
    {
        GateKind.ISING_ZZ,
        GateKind.GLOBAL_G,
        GateKind.GLOBAL_GG,
        GateKind.NEAREST_N,
        GateKind.COUPLING_U,
    }
)

PHASE_TYPE_KINDS = frozenset(
    {GateKind.PHASE, GateKind.S, GateKind.T, GateKind.T_DAGGER, GateKind.PAULI_Z}
)

ANGLED_KINDS = frozenset({GateKind.PULSE, GateKind.PHASE}) | ENTANGLER_KINDS

FIXED_ARITY = {
    GateKind.CNOT: 2,
    GateKind.CPHASE: 2,
    GateKind.ISING_ZZ: 2,
    GateKind.GLOBAL_G: 3,
    GateKind.NEAREST_N: 3,
    GateKind.GLOBAL_GG: 4,
}


class GateOp(BaseModel):
    """
    One gate instance bound to qubit indices.

    angle is in radians; for CouplingU it is the free-evolution duration tau
    (in units of the inverse coupling scale). couplings is the symmetric J
    matrix over the op's own qubits, present only for CouplingU.
    """

    model_config = ConfigDict(frozen=True)

    kind: GateKind = Field(..., description="Gate kind.")
    qubits: Tuple[int, ...] = Field(..., description="Ordered qubit indices the gate acts on.")
    angle: Optional[float] = Field(None, description="Rotation angle or duration.")
    couplings: Optional[Tuple[Tuple[float, ...], ...]] = Field(
        None,
        description="Symmetric coupling matrix J over the op's qubits (CouplingU only).",
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "GateOp":
        kind = self.kind
        arity = len(self.qubits)
        if arity == 0:
            raise ValueError(f"{kind.value}: at least one qubit is required")
        if len(set(self.qubits)) != arity:
            raise ValueError(f"{kind.value}: duplicate qubit index in {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"{kind.value}: negative qubit index in {self.qubits}")

        if kind in SINGLE_QUBIT_KINDS and arity != 1:
            raise ValueError(f"{kind.value} acts on exactly 1 qubit, got {arity}")
        expected = FIXED_ARITY.get(kind)
        if expected is not None and arity != expected:
            raise ValueError(f"{kind.value} acts on exactly {expected} qubits, got {arity}")

        if kind in ANGLED_KINDS:
            if self.angle is None:
                raise ValueError(f"{kind.value} requires an angle")
            if not math.isfinite(self.angle):
                raise ValueError(f"{kind.value}: angle must be finite, got {self.angle}")
        elif self.angle is not None:
            raise ValueError(f"{kind.value} takes no angle")

        if kind == GateKind.COUPLING_U:
            if arity < 2:
                raise ValueError("CouplingU acts on at least 2 qubits")
            j = self.couplings
            if j is None:
                raise ValueError("CouplingU requires a couplings matrix")
            if len(j) != arity or any(len(row) != arity for row in j):
                raise ValueError(f"CouplingU: couplings must be {arity}x{arity}")
            for a in range(arity):
                for b in range(a + 1, arity):
                    if abs(j[a][b] - j[b][a]) > 1e-12 * max(1.0, abs(j[a][b])):
                        raise ValueError("CouplingU: couplings matrix must be symmetric")
        elif self.couplings is not None:
            raise ValueError(f"{kind.value} takes no couplings")
        return self

    @property
    def is_entangler(self) -> bool:
        return self.kind in ENTANGLER_KINDS or self.kind in (GateKind.CNOT, GateKind.CPHASE)
