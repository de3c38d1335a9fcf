"""
Bichromatic (Sorensen-Molmer) and sigma-z Raman realizations of the global gate.

With uniform coupling g and counterpropagating beams the interaction is
H = g S (a^dag e^{i delta t} + a e^{-i delta t}), S = sum_k sigma_k^beta, whose
exact propagator is a spin-dependent displacement times
exp(i (4 g^2 / delta^2)(delta t - sin delta t) J_beta^2). At t = 2 pi / delta
the displacement closes and only the geometric phase remains.
"""
import numpy as np
from scipy.linalg import expm

from globalgates.core.errors import PhysicsError
from globalgates.core.gates import HADAMARD, all_pairs, collective_spin, pair_sign_sum
from globalgates.core.tensor import kron_all
from globalgates.enums import SpinBasis
from globalgates.schemas.physics import BichromaticParams


def gate_angle(g: float, delta: float) -> float:
    """phi = 4 pi g^2 / delta^2, the G-gate angle produced at t = 2 pi / delta."""
    if delta == 0:
        raise PhysicsError("delta must be nonzero")
    return 4 * np.pi * g**2 / delta**2


def coupling_for_angle(phi: float, delta: float) -> float:
    """Inverse of gate_angle for phi >= 0."""
    if phi < 0:
        raise PhysicsError("phi must be nonnegative")
    return abs(delta) * np.sqrt(phi / (4 * np.pi))


def displacement_envelope(p: BichromaticParams, t: float) -> complex:
    """a(t) = (2 g / delta)(1 - e^{i delta t}), per unit J_beta eigenvalue."""
    return complex(2 * p.g / p.delta * (1 - np.exp(1j * p.delta * t)))


def geometric_phase(p: BichromaticParams, t: float) -> float:
    """Coefficient of J_beta^2 accumulated by time t."""
    return 4 * p.g**2 / p.delta**2 * (p.delta * t - np.sin(p.delta * t))


def spin_operator(n_ions: int, basis: SpinBasis) -> np.ndarray:
    """sum_k sigma_k^beta = 2 J_beta."""
    return 2 * collective_spin(n_ions, SpinBasis(basis).value)


def sm_propagator(p: BichromaticParams) -> np.ndarray:
    """
    Spin propagator at the gate time, exp(i (8 pi g^2 / delta^2) J_beta^2).

    Built from J^2 = N/4 + (1/2) sum_{j<k} sigma_j sigma_k as
    e^{i phi N / 2} exp(i phi sum sigma sigma) with phi = 4 pi g^2 / delta^2.
    """
    n = p.n_ions
    phi = gate_angle(p.g, p.delta)
    diagonal = np.exp(1j * phi * (pair_sign_sum(n, all_pairs(range(n))) + n / 2))
    u = np.diag(diagonal)
    if SpinBasis(p.basis) == SpinBasis.X:
        h = kron_all([HADAMARD] * n)
        u = h @ u @ h
    return u


def sm_propagator_direct(p: BichromaticParams) -> np.ndarray:
    """Dense-exponential oracle for sm_propagator."""
    j = collective_spin(p.n_ions, SpinBasis(p.basis).value)
    return expm(1j * (8 * np.pi * p.g**2 / p.delta**2) * (j @ j))
