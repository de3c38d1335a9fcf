"""
Magnetic-gradient induced coupling (MAGIC) in a linear harmonic trap.

Lengths are in the Coulomb-harmonic scale l = (e^2 / (4 pi eps0 m w^2))^(1/3)
and energies in m w^2 l^2, so the axial potential of the chain is

    V(u) = sum_i u_i^2 / 2 + sum_{i<j} 1 / |u_i - u_j|.

Physical units enter only at the TrapSpec boundary in magic_couplings().
"""
import logging
from typing import Sequence

import numpy as np
from scipy import constants
from scipy.optimize import root

from globalgates.core.errors import EquilibriumError, PhysicsError, SingularHessianError
from globalgates.core.gates import pair_sign_sum
from globalgates.schemas.physics import TrapSpec

logger = logging.getLogger(__name__)

FORCE_TOLERANCE = 1e-12
MAX_CONDITION_NUMBER = 1e12
SUPPORTED_IONS = (2, 3, 4)
# New label of each ion in trap order; the middle ion of three becomes ion 1.
CENTRAL_FIRST_RELABEL = {3: (2, 1, 3)}


def _inverse_cubes(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Signed separations u_i - u_j and |u_i - u_j|^-3, zero on the diagonal."""
    d = u[:, None] - u[None, :]
    dist = np.abs(d)
    np.fill_diagonal(dist, 1.0)
    inv_cube = 1.0 / dist**3
    np.fill_diagonal(inv_cube, 0.0)
    return d, inv_cube


def chain_force(u: np.ndarray) -> np.ndarray:
    """Gradient of V: u_i - sum_j (u_i - u_j) / |u_i - u_j|^3."""
    u = np.asarray(u, dtype=float)
    d, inv_cube = _inverse_cubes(u)
    return u - np.sum(d * inv_cube, axis=1)


def axial_hessian(positions: Sequence[float]) -> np.ndarray:
    """A_jj = 1 + 2 sum_k |u_j - u_k|^-3, A_jk = -2 |u_j - u_k|^-3."""
    u = np.asarray(positions, dtype=float)
    _, inv_cube = _inverse_cubes(u)
    hessian = -2.0 * inv_cube
    np.fill_diagonal(hessian, 1.0 + 2.0 * np.sum(inv_cube, axis=1))
    return hessian


def equilibrium_positions(n_ions: int, length_scale: float = 1.0) -> np.ndarray:
    """
    Axial equilibrium of n ions, sorted ascending and antisymmetric about 0.

    Returned in units of length_scale (1.0 gives dimensionless trap units).
    """
    if n_ions not in SUPPORTED_IONS:
        raise PhysicsError(f"n_ions must be one of {SUPPORTED_IONS}, got {n_ions}")

    guess = np.linspace(-1.0, 1.0, n_ions) * 0.6 * (n_ions - 1)
    solution = root(chain_force, guess, jac=axial_hessian, method="hybr", tol=1e-15)
    u = np.sort(solution.x)
    # Newton polish on the exact Hessian, then restore the mirror symmetry.
    for _ in range(3):
        u = u - np.linalg.solve(axial_hessian(u), chain_force(u))
    u = 0.5 * (u - u[::-1])

    residual = float(np.max(np.abs(chain_force(u))))
    if not solution.success and residual >= FORCE_TOLERANCE:
        logger.error("equilibrium_positions: n=%d did not converge (%s)", n_ions, solution.message)
        raise EquilibriumError(f"equilibrium for {n_ions} ions did not converge: {solution.message}")
    if residual >= FORCE_TOLERANCE:
        raise EquilibriumError(f"residual force {residual:.3e} exceeds {FORCE_TOLERANCE:.0e}")
    return u * length_scale


def _checked_inverse(hessian: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(hessian)
    if not np.isfinite(cond) or cond > MAX_CONDITION_NUMBER:
        logger.error("magic_couplings: Hessian condition number %.3e", cond)
        raise SingularHessianError(f"trap Hessian is singular (condition number {cond:.3e})")
    return np.linalg.inv(hessian)


def default_relabelling(n_ions: int) -> tuple[int, ...] | None:
    """Central ion first: for three ions this gives J12 = J13. None when no relabelling applies."""
    return CENTRAL_FIRST_RELABEL.get(n_ions)


def harmonic_coupling_matrix(n_ions: int) -> np.ndarray:
    """Dimensionless couplings (A^-1)_jk with zero diagonal."""
    a_inv = _checked_inverse(axial_hessian(equilibrium_positions(n_ions)))
    j = 0.5 * (a_inv + a_inv.T)
    np.fill_diagonal(j, 0.0)
    return j


def magic_couplings(spec: TrapSpec) -> np.ndarray:
    """
    J_jk = (g_e mu_B b)^2 / 2 (A^-1)_jk in rad/s.

    The physical Hessian is m w^2 times the dimensionless one; dividing the
    energy by hbar gives an angular frequency.
    """
    scale = (spec.g_factor * spec.bohr_magneton * spec.gradient_b) ** 2 / (
        2.0 * spec.ion_mass * spec.axial_frequency**2 * constants.hbar
    )
    j = scale * harmonic_coupling_matrix(spec.n_ions)
    logger.info(
        "magic_couplings: n=%d b=%.3g T/m scale=%.3e rad/s J12=%.3e",
        spec.n_ions,
        spec.gradient_b,
        scale,
        j[0, 1],
    )
    return j


def relabel_ions(couplings, order: Sequence[int]) -> np.ndarray:
    """
    Rename ions: old ion i (1-based) becomes ion order[i-1].

    relabel_ions(J, (2, 1, 3)) is the relabelling that makes J12 = J13 for
    three ions in a harmonic trap.
    """
    j = np.asarray(couplings, dtype=float)
    n = j.shape[0]
    perm = [int(k) - 1 for k in order]
    if sorted(perm) != list(range(n)):
        raise PhysicsError(f"{list(order)} is not a relabelling of ions 1..{n}")
    out = np.empty_like(j)
    for old_a in range(n):
        for old_b in range(n):
            out[perm[old_a], perm[old_b]] = j[old_a, old_b]
    return out


def free_evolution(couplings, tau: float) -> np.ndarray:
    """U(tau) = exp((i tau / 2) sum_{j<k} J_jk s_j s_k), built as a diagonal."""
    j = np.asarray(couplings, dtype=float)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise PhysicsError(f"couplings must be square, got shape {j.shape}")
    if not np.allclose(j, j.T, atol=1e-12 * max(1.0, float(np.max(np.abs(j))))):
        raise PhysicsError("couplings must be symmetric")
    n = j.shape[0]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    c = pair_sign_sum(n, pairs, [0.5 * j[a, b] for a, b in pairs])
    return np.diag(np.exp(1j * tau * c))
