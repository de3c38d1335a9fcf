from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .gate_op import GateOp

MAX_QUBITS = 4


class Circuit(BaseModel):
    """
    Time-ordered gate sequence: ops[0] acts first.

    The order matches the left-to-right operator forms used for every
    construction in this package; evaluate() performs the single reversal
    into a matrix product.
    """

    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(..., ge=1, le=MAX_QUBITS, description="Number of qubits.")
    ops: Tuple[GateOp, ...] = Field(default_factory=tuple, description="Ops in time order.")
    name: Optional[str] = Field(None, description="Optional circuit name.")
    metadata: Dict[str, str] = Field(default_factory=dict, description="Free-form annotations.")

    @model_validator(mode="after")
    def _check_indices(self) -> "Circuit":
        for i, op in enumerate(self.ops):
            bad = [q for q in op.qubits if q >= self.n_qubits]
            if bad:
                raise ValueError(
                    f"ops[{i}] {op.kind.value}: qubit index {bad[0]} out of range for {self.n_qubits} qubits"
                )
        return self

    def then(self, other: "Circuit") -> "Circuit":
        """Circuit that runs self first and other afterwards."""
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"cannot concatenate circuits on {self.n_qubits} and {other.n_qubits} qubits"
            )
        return Circuit(
            n_qubits=self.n_qubits,
            ops=self.ops + other.ops,
            name=self.name,
            metadata=dict(self.metadata),
        )

    def __len__(self) -> int:
        return len(self.ops)
