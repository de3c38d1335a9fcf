from typing import Annotated, Any, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    model_validator,
)

from globalgates.core.config import get_settings
from globalgates.core.targets import target_matrix
from globalgates.core.tensor import as_matrix, matrix_to_pairs, pairs_to_matrix
from globalgates.enums import CouplerKind, FinalLayer, ObjectiveMode, TargetName

from .circuit import MAX_QUBITS, Circuit


def _coerce_matrix(value: Any) -> np.ndarray:
    if isinstance(value, np.ndarray):
        return as_matrix(value)
    return pairs_to_matrix(value)


# Complex matrices travel as nested [re, im] pairs, row-major.
ComplexMatrix = Annotated[
    np.ndarray,
    PlainValidator(_coerce_matrix),
    PlainSerializer(matrix_to_pairs, return_type=list),
    WithJsonSchema(
        {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}},
        }
    ),
]

COUPLER_QUBITS = {
    CouplerKind.GLOBAL_G: 3,
    CouplerKind.NEAREST_N: 3,
    CouplerKind.GLOBAL_GG: 4,
}


class CouplerModel(BaseModel):
    """Entangler family B of the ansatz, with its coupling matrix for CouplingU."""

    model_config = ConfigDict(frozen=True)

    kind: CouplerKind = Field(..., description="Entangler family.")
    n_qubits: int = Field(..., ge=2, le=MAX_QUBITS, description="Number of qubits the entangler spans.")
    couplings: Optional[Tuple[Tuple[float, ...], ...]] = Field(
        None, description="Symmetric J matrix (coupling-u only)."
    )

    @model_validator(mode="after")
    def _check(self) -> "CouplerModel":
        expected = COUPLER_QUBITS.get(self.kind)
        if expected is not None and self.n_qubits != expected:
            raise ValueError(f"{self.kind.value} spans exactly {expected} qubits, got {self.n_qubits}")
        if self.kind == CouplerKind.COUPLING_U:
            j = self.couplings
            if j is None or len(j) != self.n_qubits or any(len(row) != self.n_qubits for row in j):
                raise ValueError(f"coupling-u needs a {self.n_qubits}x{self.n_qubits} couplings matrix")
            if not np.allclose(np.array(j), np.array(j).T, atol=1e-12):
                raise ValueError("couplings matrix must be symmetric")
            if j[0][1] == 0:
                raise ValueError("couplings[0][1] sets the angle scale and must be nonzero")
        elif self.couplings is not None:
            raise ValueError(f"{self.kind.value} takes no couplings")
        return self

    @classmethod
    def default_for(cls, kind: CouplerKind, couplings=None) -> "CouplerModel":
        kind = CouplerKind(kind)
        if kind == CouplerKind.COUPLING_U:
            j = np.asarray(couplings, dtype=float)
            return cls(kind=kind, n_qubits=j.shape[0], couplings=tuple(tuple(float(x) for x in row) for row in j))
        return cls(kind=kind, n_qubits=COUPLER_QUBITS[kind])


class SynthesisProblem(BaseModel):
    """
    Target plus search budget for the incremental entangler-count search.

    Give either target_name or an inline target matrix; a name fills in the
    matrix.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    target: Optional[ComplexMatrix] = Field(None, description="Target unitary as [re, im] pairs.")
    target_name: Optional[TargetName] = Field(None, description="Named target, used when target is absent.")
    coupler: CouplerModel = Field(..., description="Entangler family.")
    min_entanglers: int = Field(1, ge=0, description="First entangler count tried.")
    max_entanglers: int = Field(..., ge=0, description="Last entangler count tried.")
    restarts_per_count: int = Field(
        default_factory=lambda: get_settings().SYNTH_RESTARTS, ge=1, description="Random starts per count and variant."
    )
    tolerance: float = Field(
        default_factory=lambda: get_settings().SYNTH_TOLERANCE, gt=0, description="Aligned-distance convergence threshold."
    )
    seed: int = Field(default_factory=lambda: get_settings().SYNTH_SEED, ge=0, lt=2**64, description="Generator seed.")
    allow_one_nonglobal: bool = Field(False, description="Also try replacing one entangler by a single-pair coupler.")
    final_layer: FinalLayer = Field(FinalLayer.PHASE, description="Local layer after the last entangler.")
    objective_mode: ObjectiveMode = Field(ObjectiveMode.ALIGNED_SQUARED, description="Objective variant.")

    @model_validator(mode="after")
    def _resolve_target(self) -> "SynthesisProblem":
        if self.target is None:
            if self.target_name is None:
                raise ValueError("either target or target_name is required")
            self.target = target_matrix(self.target_name)
        dim = 1 << self.coupler.n_qubits
        if self.target.shape != (dim, dim):
            raise ValueError(
                f"target of shape {self.target.shape} does not match a {self.coupler.n_qubits}-qubit coupler"
            )
        if self.max_entanglers < self.min_entanglers:
            raise ValueError("max_entanglers must be >= min_entanglers")
        return self

    @property
    def n_qubits(self) -> int:
        return self.coupler.n_qubits


class SynthesisAttempt(BaseModel):
    """Evidence for one (entangler count, variant) search."""

    n_entanglers: int = Field(..., ge=0, description="Entanglers in the ansatz.")
    nonglobal_slot: Optional[int] = Field(None, description="Slot replaced by a single-pair coupler, if any.")
    restarts_used: int = Field(..., ge=0, description="Starts optimized before stopping.")
    aborted: int = Field(0, ge=0, description="Starts abandoned on a non-finite objective or a solver failure.")
    best_residual: Optional[float] = Field(..., description="Best aligned distance reached; None if every start aborted.")
    converged: bool = Field(..., description="best_residual < tolerance.")


class SynthesisResult(BaseModel):
    """Best circuit found, with residuals and the per-count search log."""

    circuit: Circuit = Field(..., description="Synthesized circuit in time order.")
    residual_raw: float = Field(..., ge=0, description="Absolute-sum distance without phase alignment.")
    residual_aligned: float = Field(..., ge=0, description="Absolute-sum distance at the aligning phase.")
    entangler_count: int = Field(..., ge=0, description="Entangling ops in the circuit.")
    restarts_used: int = Field(..., ge=0, description="Total starts optimized across all counts.")
    converged: bool = Field(..., description="residual_aligned < tolerance.")
    tolerance: float = Field(..., gt=0, description="Threshold the search was judged against.")
    seed: int = Field(..., description="Generator seed used.")
    attempts: List[SynthesisAttempt] = Field(default_factory=list, description="Search log, in order tried.")
