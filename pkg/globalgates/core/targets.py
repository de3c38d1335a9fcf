"""
Target unitaries: Toffoli, CCPhase, CCCPhase, Fredkin, CNOT, CPhase.

All are integer-entried permutation or diagonal matrices in the |q0 q1 ...>
ordering of core.tensor.
"""
import logging

import numpy as np

from globalgates.core.errors import UnknownNameError
from globalgates.enums import TargetName

logger = logging.getLogger(__name__)


def _swap_rows(dim: int, a: int, b: int) -> np.ndarray:
    m = np.eye(dim, dtype=np.complex128)
    m[[a, b]] = m[[b, a]]
    return m


def _flip_last(dim: int) -> np.ndarray:
    m = np.eye(dim, dtype=np.complex128)
    m[-1, -1] = -1
    return m


_BUILDERS = {
    TargetName.TOFFOLI: lambda: _swap_rows(8, 0b110, 0b111),
    TargetName.CCPHASE: lambda: _flip_last(8),
    TargetName.CCCPHASE: lambda: _flip_last(16),
    TargetName.FREDKIN: lambda: _swap_rows(8, 0b101, 0b110),
    TargetName.CNOT: lambda: _swap_rows(4, 0b10, 0b11),
    TargetName.CPHASE: lambda: _flip_last(4),
}


def resolve_target_name(name) -> TargetName:
    """Accept a TargetName or a case-insensitive string such as "Toffoli"."""
    if isinstance(name, TargetName):
        return name
    try:
        return TargetName(str(name).strip().lower())
    except ValueError:
        known = ", ".join(t.value for t in TargetName)
        logger.error("resolve_target_name: unknown target %r", name)
        raise UnknownNameError(f"unknown target {name!r}; expected one of: {known}") from None


def target_matrix(name) -> np.ndarray:
    """A fresh copy of the named target unitary."""
    return _BUILDERS[resolve_target_name(name)]()


def target_qubits(name) -> int:
    return int(target_matrix(name).shape[0]).bit_length() - 1
