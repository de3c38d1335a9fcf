"""
Distance between the ansatz unitary and the target.

The default is the smooth surrogate sum |F - e^{i t} U|^2 at the trace
aligning phase t; raw mode is the absolute-sum distance with no alignment.
"""
import numpy as np

from globalgates.core.tensor import raw_distance
from globalgates.enums import ObjectiveMode
from globalgates.synthesis.ansatz import Ansatz


def trace_phase(target: np.ndarray, u: np.ndarray) -> float:
    """arg tr(U^dagger F): the phase t minimizing sum |F - e^{i t} U|^2."""
    return float(np.angle(np.vdot(u, target)))


def aligned_squared(target: np.ndarray, u: np.ndarray) -> float:
    t = trace_phase(target, u)
    return float(np.sum(np.abs(target - np.exp(1j * t) * u) ** 2))


def objective(params, ansatz: Ansatz, target, mode: ObjectiveMode = ObjectiveMode.ALIGNED_SQUARED) -> float:
    target = np.asarray(target, dtype=np.complex128)
    u = ansatz.unitary(params)
    if ObjectiveMode(mode) == ObjectiveMode.RAW:
        return raw_distance(target, u)
    return aligned_squared(target, u)


def objective_gradient(params, ansatz: Ansatz, target) -> np.ndarray:
    """Analytic gradient of the aligned squared objective."""
    target = np.asarray(target, dtype=np.complex128)
    u, du = ansatz.jacobian(params)
    rotation = np.exp(1j * trace_phase(target, u))
    residual = rotation * u - target
    # d/dp sum |r|^2 = 2 Re sum conj(r) dr; the phase derivative vanishes at its optimum.
    return 2 * np.real(np.einsum("ij,pij->p", residual.conj(), rotation * du))
