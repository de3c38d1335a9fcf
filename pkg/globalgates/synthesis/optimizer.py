"""
Single-start local optimization.

A damped Gauss-Newton (trust-region least squares) on the residual vector
[Re, Im](e^{i gamma} U(x) - F). In aligned mode the global phase gamma is one
more variable, so the minimum over gamma is the aligned squared objective;
raw mode pins gamma to 0.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import least_squares

from globalgates.core.config import get_settings
from globalgates.core.errors import DimensionMismatchError, InvalidOptionError, OptimizationAborted
from globalgates.core.tensor import phase_aligned_distance
from globalgates.enums import ObjectiveMode
from globalgates.schemas.synthesis import SynthesisProblem
from globalgates.synthesis.ansatz import Ansatz, build_ansatz
from globalgates.synthesis.objective import objective, trace_phase

logger = logging.getLogger(__name__)

STEP_TOLERANCE = 1e-15


@dataclass(frozen=True)
class OptimizeOutcome:
    params: np.ndarray
    objective: float
    initial_objective: float
    aligned_distance: float
    evaluations: int
    status: int
    message: str


def _split(values: np.ndarray) -> np.ndarray:
    return np.concatenate([values.real.ravel(), values.imag.ravel()])


def fit(
    ansatz: Ansatz,
    target,
    initial,
    *,
    mode: ObjectiveMode = ObjectiveMode.ALIGNED_SQUARED,
    active: Optional[np.ndarray] = None,
    max_iterations: Optional[int] = None,
    gtol: Optional[float] = None,
) -> OptimizeOutcome:
    """
    Optimize the active parameters of ansatz from initial.

    Raises OptimizationAborted when the start or any trial point is not finite,
    or when the solver's linear algebra fails.
    """
    settings = get_settings()
    max_iterations = settings.OPTIMIZER_MAX_ITERATIONS if max_iterations is None else max_iterations
    gtol = settings.OPTIMIZER_GTOL if gtol is None else gtol
    if max_iterations < 1:
        raise InvalidOptionError(f"max_iterations must be at least 1, got {max_iterations}")
    if gtol < 0:
        raise InvalidOptionError(f"gtol must be non-negative, got {gtol}")
    mode = ObjectiveMode(mode)
    target = np.asarray(target, dtype=np.complex128)

    x0 = np.array(initial, dtype=float)
    if x0.shape != (ansatz.n_params,):
        raise DimensionMismatchError(f"expected {ansatz.n_params} initial parameters, got shape {x0.shape}")
    if not np.all(np.isfinite(x0)):
        raise OptimizationAborted("initial parameters are not finite")
    mask = np.ones(ansatz.n_params, dtype=bool) if active is None else np.asarray(active, dtype=bool)
    free = np.flatnonzero(mask)
    aligned = mode == ObjectiveMode.ALIGNED_SQUARED

    def full_params(z: np.ndarray) -> np.ndarray:
        x = x0.copy()
        x[free] = z[: free.size]
        return x

    def rotation(z: np.ndarray) -> complex:
        return np.exp(1j * z[-1]) if aligned else 1.0

    def residuals(z: np.ndarray) -> np.ndarray:
        r = _split(rotation(z) * ansatz.unitary(full_params(z)) - target)
        if not np.all(np.isfinite(r)):
            raise OptimizationAborted("non-finite residual during search")
        return r

    def jacobian(z: np.ndarray) -> np.ndarray:
        u, du = ansatz.jacobian(full_params(z))
        rot = rotation(z)
        columns = [_split(rot * du[p]) for p in free]
        if aligned:
            columns.append(_split(1j * rot * u))
        return np.column_stack(columns) if columns else np.zeros((2 * target.size, 0))

    initial_objective = objective(x0, ansatz, target, mode)
    z0 = x0[free]
    if aligned:
        z0 = np.append(z0, trace_phase(target, ansatz.unitary(x0)))

    # The reported objective is already phase-aligned, so gamma alone moves nothing.
    if free.size == 0:
        x = x0
        evaluations, status, message = 0, 0, "no free parameters"
    else:
        try:
            result = least_squares(
                residuals,
                z0,
                jac=jacobian,
                method="trf",
                tr_solver="exact",
                ftol=STEP_TOLERANCE,
                xtol=STEP_TOLERANCE,
                gtol=gtol,
                max_nfev=max_iterations,
            )
        except np.linalg.LinAlgError as exc:
            logger.debug("fit: solver linear algebra failed: %s", exc)
            raise OptimizationAborted(f"solver failed: {exc}") from exc
        if not np.all(np.isfinite(result.x)):
            raise OptimizationAborted("solver returned non-finite parameters")
        x = full_params(result.x)
        evaluations, status, message = int(result.nfev), int(result.status), str(result.message)

    u = ansatz.unitary(x)
    value = objective(x, ansatz, target, mode)
    outcome = OptimizeOutcome(
        params=x,
        objective=value,
        initial_objective=initial_objective,
        aligned_distance=phase_aligned_distance(target, u),
        evaluations=evaluations,
        status=status,
        message=message,
    )
    logger.debug(
        "fit: n_g=%d evaluations=%d objective=%.3e aligned=%.3e status=%d",
        ansatz.n_entanglers,
        evaluations,
        outcome.objective,
        outcome.aligned_distance,
        status,
    )
    return outcome


def optimize_once(
    problem: SynthesisProblem,
    n_entanglers: int,
    initial,
    *,
    nonglobal_slot: Optional[int] = None,
    active: Optional[np.ndarray] = None,
) -> OptimizeOutcome:
    """One local descent for the problem's template with n_entanglers entanglers."""
    ansatz = build_ansatz(
        problem.n_qubits,
        n_entanglers,
        problem.coupler,
        final_layer=problem.final_layer,
        nonglobal_slot=nonglobal_slot,
    )
    return fit(ansatz, problem.target, initial, mode=problem.objective_mode, active=active)
