"""
Catalog of circuits stated explicitly for the global-gate constructions.

Sequences are stored in time order: the operator forms they come from are
read left to right, the first factor acting first.
"""
import functools
import logging
from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from globalgates.core import gates as g
from globalgates.core.circuit import entangler_count, verify
from globalgates.core.config import get_settings
from globalgates.core.errors import UnknownNameError
from globalgates.core.targets import target_matrix
from globalgates.enums import TargetName
from globalgates.physics.trap import CENTRAL_FIRST_RELABEL, harmonic_coupling_matrix, relabel_ions
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.gate_op import GateOp
from globalgates.schemas.verification import VerificationReport
from globalgates.utils.timing import log_timing

logger = logging.getLogger(__name__)

PI = np.pi

STATUS_VERIFIED = "verified"
STATUS_CLAIM = "claim"
STATUS_AS_PRINTED = "angles as printed; see report"

# Angles of the unequal-coupling circuit, printed to three decimals of pi.
UNEQUAL_PHI = (0.375 * PI, 0.258 * PI)
UNEQUAL_THETA = (1.032 * PI, 0.484 * PI, 1.484 * PI)
UNEQUAL_RELABEL = CENTRAL_FIRST_RELABEL[3]


class CatalogEntry(BaseModel):
    """One named circuit with its target and the claim it backs."""

    model_config = ConfigDict(frozen=True)

    key: str = Field(..., description="Catalog key.")
    circuit: Circuit = Field(..., description="The circuit in time order.")
    target: TargetName = Field(..., description="Target gate the circuit implements.")
    tolerance: float = Field(..., gt=0, description="Aligned-distance acceptance threshold.")
    claimed_entanglers: int = Field(..., ge=0, description="Entangling gates the construction is stated to need.")
    source: str = Field(..., description="Where the construction comes from.")
    status: str = Field(STATUS_VERIFIED, description="verified, claim, or angles as printed; see report.")


# --------------------------------------------------------------------------
# Construction helpers
# --------------------------------------------------------------------------
def _pulses(qubits, theta: float = PI / 2) -> List[GateOp]:
    return [g.pulse(q, theta) for q in qubits]


def _phases(qubits, phi: float) -> List[GateOp]:
    return [g.phase(q, phi) for q in qubits]


def _circuit(n: int, ops: List[GateOp], name: str, **metadata: str) -> Circuit:
    return Circuit(n_qubits=n, ops=tuple(ops), name=name, metadata=metadata)


def ccphase_global_3g() -> Circuit:
    ops = [
        g.pulse(0),
        g.global_g(PI / 4),
        g.pulse(0),
        g.phase(0, PI / 8),
        g.pulse(0),
        g.global_g(PI / 4),
        g.pulse(0),
        g.global_g(PI / 8),
        g.phase(0, PI / 8),
        g.phase(1, 5 * PI / 8),
        g.phase(2, 5 * PI / 8),
    ]
    return _circuit(3, ops, "ccphase-global-3G")


def ccphase_ht() -> Circuit:
    ops = [
        g.hadamard(0),
        g.global_g(PI / 4),
        g.hadamard(0),
        g.t_dagger(0),
        g.hadamard(0),
        g.global_g(PI / 4),
        g.hadamard(0),
        g.global_g(PI / 8),
        g.t_gate(0),
        g.t_gate(1),
        g.t_gate(2),
    ]
    return _circuit(3, ops, "ccphase-HT")


def fredkin_global_4g() -> Circuit:
    ops = [
        g.pulse(2),
        g.phase(2, PI / 2),
        g.global_g(PI / 4),
        g.pulse(1),
        g.pulse(2),
        g.phase(0, 3 * PI / 8),
        g.phase(1, 5 * PI / 8),
        g.phase(2, 7 * PI / 8),
        g.global_g(PI / 8),
        g.pulse(1),
        g.global_g(PI / 4),
        g.phase(1, 3 * PI / 4),
        g.pulse(1, PI / 4),
        g.pulse(2),
        g.phase(2, PI / 2),
        g.global_g(PI / 4),
        g.pulse(2),
        g.phase(2, PI / 4),
    ]
    return _circuit(3, ops, "fredkin-global-4G")


def cccphase_global_7gg() -> Circuit:
    every = (0, 1, 2, 3)
    first3 = (0, 1, 2)
    last = (3,)

    def gg(phi):
        return [g.global_gg(phi)]

    ops: List[GateOp] = []
    for part in (
        _pulses(every), gg(PI / 4), _phases(every, PI / 2), _pulses(first3), gg(PI / 4),
        _phases(every, -PI / 4), _pulses(every), _phases(last, -PI / 16), gg(PI / 4),
        _pulses(every), gg(PI / 4),
        _phases(last, -PI / 4), _pulses(last), _phases(last, PI / 8), _phases(every, PI / 16),
        _pulses(every), gg(PI / 4), _phases(every, -PI / 4), _pulses(every), _phases(last, PI / 2),
        gg(PI / 4), _phases(every, -PI / 4), _pulses(every), gg(PI / 16), _phases(last, PI / 2),
        _phases(every, 9 * PI / 16),
    ):
        ops.extend(part)
    return _circuit(4, ops, "cccphase-global-7GG")


def unequal_coupling_matrix() -> np.ndarray:
    """Harmonic-trap couplings for three ions, relabelled so that J12 = J13."""
    return relabel_ions(harmonic_coupling_matrix(3), UNEQUAL_RELABEL)


def ccphase_unequal_j(
    couplings: np.ndarray | None = None,
    phis=UNEQUAL_PHI,
    thetas=UNEQUAL_THETA,
) -> Circuit:
    j = unequal_coupling_matrix() if couplings is None else np.asarray(couplings, dtype=float)
    ops = [
        g.pulse(0),
        g.coupling_u_for_angle(j, PI / 4),
        g.pulse(0),
        g.phase(0, PI / 8),
        g.pulse(0, thetas[0]),
        g.coupling_u_for_angle(j, phis[0]),
        g.pulse(0, thetas[1]),
        g.coupling_u_for_angle(j, phis[1]),
        g.pulse(0, thetas[2]),
        g.phase(0, PI / 8),
        g.phase(1, 5 * PI / 8),
        g.phase(2, 5 * PI / 8),
    ]
    return _circuit(3, ops, "ccphase-unequal-J")


def _six_cnot(with_hadamards: bool, name: str) -> Circuit:
    a, b, t = 0, 1, 2
    h = [g.hadamard(t)] if with_hadamards else []
    ops = [
        *h,
        g.cnot(b, t),
        g.t_dagger(t),
        g.cnot(a, t),
        g.t_gate(t),
        g.cnot(b, t),
        g.t_dagger(t),
        g.cnot(a, t),
        g.t_dagger(b),
        g.t_gate(t),
        *h,
        g.cnot(a, b),
        g.t_dagger(b),
        g.cnot(a, b),
        g.s_gate(b),
        g.t_gate(a),
    ]
    return _circuit(3, ops, name)


def toffoli_standard_6cnot() -> Circuit:
    return _six_cnot(True, "toffoli-standard-6cnot")


def ccphase_standard_6cnot() -> Circuit:
    return _six_cnot(False, "ccphase-standard-6cnot")


# --------------------------------------------------------------------------
# Registry
# --------------------------------------------------------------------------
def _unequal_entry() -> CatalogEntry:
    tol = get_settings().UNEQUAL_COUPLING_TOLERANCE
    circuit = ccphase_unequal_j()
    report = verify(circuit, target_matrix(TargetName.CCPHASE), tol)
    status = STATUS_VERIFIED if report.passed else STATUS_AS_PRINTED
    logger.info(
        "catalog: ccphase-unequal-J printed angles aligned=%.3e tol=%.0e status=%s",
        report.aligned_distance,
        tol,
        status,
    )
    circuit = circuit.model_copy(
        update={"metadata": {"status": status, "printed_residual": f"{report.aligned_distance:.6e}"}}
    )
    return CatalogEntry(
        key="ccphase-unequal-J",
        circuit=circuit,
        target=TargetName.CCPHASE,
        tolerance=tol,
        claimed_entanglers=3,
        source="free evolution under harmonic-trap couplings, ions relabelled 2,1,3",
        status=status,
    )


@functools.lru_cache(maxsize=1)
def _registry() -> Dict[str, CatalogEntry]:
    tol = get_settings().EQUALITY_TOLERANCE
    entries = [
        CatalogEntry(
            key="ccphase-global-3G",
            circuit=ccphase_global_3g(),
            target=TargetName.CCPHASE,
            tolerance=tol,
            claimed_entanglers=3,
            source="three global G gates, four pi/2 pulses, four phase gates in two groups",
        ),
        CatalogEntry(
            key="ccphase-HT",
            circuit=ccphase_ht(),
            target=TargetName.CCPHASE,
            tolerance=tol,
            claimed_entanglers=3,
            source="three global G gates with Hadamard and T gates",
        ),
        CatalogEntry(
            key="fredkin-global-4G",
            circuit=fredkin_global_4g(),
            target=TargetName.FREDKIN,
            tolerance=tol,
            claimed_entanglers=4,
            source="four global G gates; qubits 1 and 2 swapped conditionally on qubit 0",
        ),
        CatalogEntry(
            key="cccphase-global-7GG",
            circuit=cccphase_global_7gg(),
            target=TargetName.CCCPHASE,
            tolerance=tol,
            claimed_entanglers=7,
            source="seven global GG gates; minimality is a numerical claim",
            status=STATUS_CLAIM,
        ),
        _unequal_entry(),
        CatalogEntry(
            key="toffoli-standard-6cnot",
            circuit=toffoli_standard_6cnot(),
            target=TargetName.TOFFOLI,
            tolerance=tol,
            claimed_entanglers=6,
            source="textbook decomposition, 6 CNOT and 10 single-qubit gates",
        ),
        CatalogEntry(
            key="ccphase-standard-6cnot",
            circuit=ccphase_standard_6cnot(),
            target=TargetName.CCPHASE,
            tolerance=tol,
            claimed_entanglers=6,
            source="textbook decomposition without the target Hadamards",
        ),
    ]
    return {entry.key: entry for entry in entries}


def catalog_keys() -> List[str]:
    return list(_registry())


def catalog_entry(key: str) -> CatalogEntry:
    try:
        return _registry()[key]
    except KeyError:
        logger.error("catalog_entry: unknown key %r", key)
        raise UnknownNameError(f"unknown catalog key {key!r}; expected one of: {', '.join(catalog_keys())}") from None


def catalog_circuit(key: str) -> Circuit:
    return catalog_entry(key).circuit


@log_timing("verify_catalog")
def verify_catalog() -> Dict[str, VerificationReport]:
    """Verify every entry against its target at the entry's own tolerance."""
    reports: Dict[str, VerificationReport] = {}
    for key, entry in _registry().items():
        report = verify(entry.circuit, target_matrix(entry.target), entry.tolerance)
        count = entangler_count(entry.circuit)
        if report.passed and count == entry.claimed_entanglers:
            logger.info("verify_catalog: %s aligned=%.3e entanglers=%d", key, report.aligned_distance, count)
        else:
            logger.warning(
                "verify_catalog: %s aligned=%.3e passed=%s entanglers=%d claimed=%d",
                key,
                report.aligned_distance,
                report.passed,
                count,
                entry.claimed_entanglers,
            )
        reports[key] = report
    return reports
