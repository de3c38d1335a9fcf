"""
Fock-space oracle for the bichromatic gate.

Integrates H(t) = g S (a^dag e^{i delta t} + a e^{-i delta t}) on the
truncated spin x centre-of-mass space with fixed-step RK4, one motional mode.
"""
import logging
import math
import threading
from typing import Optional

import numpy as np

from globalgates.core.config import get_settings
from globalgates.core.errors import (
    FockCutoffError,
    IntegrationInstabilityError,
    PhysicsError,
    SimulationCancelled,
)
from globalgates.core.tensor import kron_all, matrix_to_pairs
from globalgates.physics.bichromatic import spin_operator
from globalgates.schemas.physics import BichromaticParams, FockSimulationResult
from globalgates.utils.timing import log_timing

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-10
NORM_TOLERANCE = 1e-8
PROBE_ANGLE = np.pi / 8


def annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(np.complex128)


def probe_state(n_ions: int) -> np.ndarray:
    """Product of cos(pi/8)|0> + sin(pi/8)|1>; an eigenstate of neither sigma_x nor sigma_z."""
    single = np.array([np.cos(PROBE_ANGLE), np.sin(PROBE_ANGLE)], dtype=np.complex128)
    return kron_all([single[:, None]] * n_ions)[:, 0]


def motional_purity(columns: np.ndarray, spin_input: np.ndarray, spin_dim: int, cutoff: int) -> float:
    """Tr(rho_m^2) for the joint state reached from spin_input (x) initial motion."""
    psi = (columns @ spin_input).reshape(spin_dim, cutoff)
    psi = psi / np.linalg.norm(psi)
    rho = psi.T @ psi.conj()
    return float(np.real(np.trace(rho @ rho)))


@log_timing("fock_simulate")
def fock_simulate(
    p: BichromaticParams,
    t: float,
    initial_fock: int = 0,
    *,
    n_steps: Optional[int] = None,
    cancel: Optional[threading.Event] = None,
) -> FockSimulationResult:
    """
    Time-ordered propagator slice from |s> (x) |initial_fock> for every spin basis state s.

    Steps default to FOCK_STEPS_PER_PERIOD per 2 pi / delta. Raises
    FockCutoffError when more than 1e-10 population reaches the top two Fock
    levels and IntegrationInstabilityError when a column norm drifts by more
    than 1e-8.
    """
    cutoff = p.fock_cutoff
    if not 0 <= initial_fock < cutoff - 2:
        raise PhysicsError(f"initial_fock {initial_fock} must lie below cutoff - 2 = {cutoff - 2}")
    if t < 0:
        raise PhysicsError("t must be nonnegative")
    if n_steps is None:
        per_period = get_settings().FOCK_STEPS_PER_PERIOD
        n_steps = math.ceil(t * abs(p.delta) * per_period / (2 * math.pi))
    elif n_steps < 1:
        raise PhysicsError("n_steps must be positive")

    spin_dim = 1 << p.n_ions
    dim = spin_dim * cutoff
    a = annihilation(cutoff)
    s = spin_operator(p.n_ions, p.basis)
    raising = p.g * np.kron(s, a.conj().T)
    lowering = p.g * np.kron(s, a)

    def rhs(time: float, psi: np.ndarray) -> np.ndarray:
        rot = np.exp(1j * p.delta * time)
        return -1j * (rot * (raising @ psi) + np.conj(rot) * (lowering @ psi))

    columns = np.zeros((dim, spin_dim), dtype=np.complex128)
    columns[np.arange(spin_dim) * cutoff + initial_fock, np.arange(spin_dim)] = 1.0

    tail_levels = np.zeros(cutoff, dtype=bool)
    tail_levels[cutoff - 2 :] = True
    tail_mask = np.tile(tail_levels, spin_dim)

    h = t / n_steps if n_steps else 0.0
    max_tail = 0.0
    for step in range(n_steps):
        if cancel is not None and cancel.is_set():
            logger.warning("fock_simulate: cancelled at step %d/%d", step, n_steps)
            raise SimulationCancelled(f"cancelled at step {step} of {n_steps}")
        time = step * h
        k1 = rhs(time, columns)
        k2 = rhs(time + h / 2, columns + h / 2 * k1)
        k3 = rhs(time + h / 2, columns + h / 2 * k2)
        k4 = rhs(time + h, columns + h * k3)
        columns = columns + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

        tail = float(np.max(np.sum(np.abs(columns[tail_mask]) ** 2, axis=0)))
        max_tail = max(max_tail, tail)
        if tail > TAIL_TOLERANCE:
            logger.error("fock_simulate: tail population %.3e at step %d, cutoff %d", tail, step, cutoff)
            raise FockCutoffError(
                f"population {tail:.3e} reached the top Fock levels; increase fock_cutoff above {cutoff}"
            )

    drift = float(np.max(np.abs(np.linalg.norm(columns, axis=0) - 1.0)))
    if drift > NORM_TOLERANCE:
        logger.error("fock_simulate: norm drift %.3e with %d steps", drift, n_steps)
        raise IntegrationInstabilityError(f"norm drift {drift:.3e} exceeds {NORM_TOLERANCE:.0e}")

    block = columns.reshape(spin_dim, cutoff, spin_dim)[:, initial_fock, :]
    purity = motional_purity(columns, probe_state(p.n_ions), spin_dim, cutoff)
    logger.info(
        "fock_simulate: n=%d basis=%s t=%.4g steps=%d purity=%.12f tail=%.2e drift=%.2e",
        p.n_ions,
        p.basis.value,
        t,
        n_steps,
        purity,
        max_tail,
        drift,
    )
    return FockSimulationResult(
        spin_block=matrix_to_pairs(block),
        time=t,
        steps=n_steps,
        motional_purity=purity,
        max_tail_population=max_tail,
        norm_drift=drift,
    )
