"""
Dense complex linear algebra for 1..4 qubits.

Basis ordering is |q0 q1 ... q_{n-1}> with q0 the most significant bit of the
row index, so |001> is row 1 and qubit 0 is the leftmost ket label.
"""
from functools import reduce
from typing import Sequence

import numpy as np

from globalgates.core.errors import DimensionMismatchError, QubitIndexError

PHASE_GRID_POINTS = 1024


def as_matrix(a) -> np.ndarray:
    """Return a as a square complex128 array whose dimension is a power of two."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    dim = m.shape[0]
    if dim < 1 or dim & (dim - 1):
        raise DimensionMismatchError(f"matrix dimension {dim} is not a power of two")
    return m


def qubit_count(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if 1 << n != dim:
        raise DimensionMismatchError(f"dimension {dim} is not a power of two")
    return n


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def kron_all(factors: Sequence) -> np.ndarray:
    return reduce(kron, factors, np.ones((1, 1), dtype=np.complex128))


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def is_unitary(u, tol: float = 1e-12) -> bool:
    m = np.asarray(u, dtype=np.complex128)
    return bool(np.max(np.abs(dagger(m) @ m - np.eye(m.shape[0]))) < tol)


def spin_signs(n: int) -> np.ndarray:
    """
    (n, 2**n) array of sigma-z eigenvalues: +1 where qubit q is |0>, -1 where |1>.
    """
    index = np.arange(1 << n)
    bits = (index[None, :] >> (n - 1 - np.arange(n))[:, None]) & 1
    return 1 - 2 * bits


def embed(g, qubits: Sequence[int], n: int) -> np.ndarray:
    """
    Lift a k-qubit operator to n qubits, acting on `qubits` in the given order.

    The first wire of g is qubits[0]; permuted or non-adjacent index lists are
    handled by a tensor transpose, not by SWAP products.
    """
    qubits = [int(q) for q in qubits]
    k = len(qubits)
    m = np.asarray(g, dtype=np.complex128)
    if m.shape != (1 << k, 1 << k):
        raise DimensionMismatchError(
            f"operator of shape {m.shape} does not act on {k} qubit(s)"
        )
    if len(set(qubits)) != k:
        raise QubitIndexError(f"duplicate qubit index in {qubits}")
    for q in qubits:
        if q < 0 or q >= n:
            raise QubitIndexError(f"qubit index {q} out of range for {n} qubits")

    rest = [q for q in range(n) if q not in qubits]
    full = kron(m, np.eye(1 << len(rest)))
    if qubits == list(range(k)):
        return full

    order = qubits + rest
    source = [order.index(q) for q in range(n)]
    tensor = full.reshape((2,) * (2 * n))
    tensor = tensor.transpose(source + [n + s for s in source])
    return tensor.reshape(1 << n, 1 << n)


def _check_same_shape(f: np.ndarray, g: np.ndarray) -> None:
    if f.shape != g.shape:
        raise DimensionMismatchError(f"dimension mismatch: {f.shape} vs {g.shape}")


def raw_distance(f, g) -> float:
    """Sum over entries of |F_ij - G_ij|."""
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    _check_same_shape(f, g)
    return float(np.sum(np.abs(f - g)))


def aligning_phase(f, g) -> float:
    """
    Phase theta that brings e^{i theta} g closest to f.

    Uses arg(tr(g^dagger f)); when that trace vanishes the phase is taken
    from a uniform grid search on the absolute-sum distance.
    """
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    _check_same_shape(f, g)
    overlap = np.vdot(g, f)
    if abs(overlap) > 1e-14 * f.shape[0]:
        return float(np.angle(overlap))
    grid = np.linspace(0.0, 2 * np.pi, PHASE_GRID_POINTS, endpoint=False)
    costs = [np.sum(np.abs(f - np.exp(1j * t) * g)) for t in grid]
    return float(grid[int(np.argmin(costs))])


def aligned_distance_and_phase(f, g) -> tuple[float, float]:
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    theta = aligning_phase(f, g)
    aligned = float(np.sum(np.abs(f - np.exp(1j * theta) * g)))
    unaligned = raw_distance(f, g)
    if unaligned <= aligned:
        return unaligned, 0.0
    return aligned, theta


def phase_aligned_distance(f, g) -> float:
    """Absolute-sum distance minimized over the global phase of g."""
    return aligned_distance_and_phase(f, g)[0]


def matrix_to_pairs(m) -> list[list[list[float]]]:
    """Nested [re, im] pairs, row-major, for JSON documents."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def pairs_to_matrix(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise DimensionMismatchError(f"expected rows of [re, im] pairs, got shape {arr.shape}")
    return as_matrix(arr[..., 0] + 1j * arr[..., 1])
