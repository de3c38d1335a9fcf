"""
Matrix text format: a "# dim D" header, then D rows of 2D decimals
(re im re im ...), row-major.
"""
from pathlib import Path

import numpy as np

from globalgates.core.errors import DimensionMismatchError
from globalgates.core.tensor import as_matrix


def format_matrix(m) -> str:
    m = as_matrix(m)
    lines = [f"# dim {m.shape[0]}"]
    for row in m:
        lines.append(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if len({len(row) for row in rows}) > 1:
        raise DimensionMismatchError("rows have different lengths")
    values = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if values.ndim != 2 or values.shape[1] != 2 * values.shape[0]:
        raise DimensionMismatchError(f"expected D rows of 2D numbers, got shape {values.shape}")
    return as_matrix(values[:, 0::2] + 1j * values[:, 1::2])


def write_matrix(path: str | Path, m) -> Path:
    path = Path(path)
    path.write_text(format_matrix(m), encoding="utf-8")
    return path


def read_matrix(path: str | Path) -> np.ndarray:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))
