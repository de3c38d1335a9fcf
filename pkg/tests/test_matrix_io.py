import numpy as np
import pytest

from globalgates.core.errors import DimensionMismatchError
from globalgates.physics.bichromatic import sm_propagator
from globalgates.physics.matrix_io import format_matrix, parse_matrix, read_matrix, write_matrix
from globalgates.schemas.physics import BichromaticParams


def test_header_and_rows():
    text = format_matrix(np.array([[1, 1j], [-1j, 0.5]]))
    lines = text.splitlines()
    assert lines[0] == "# dim 2"
    assert lines[1].split() == ["1", "0", "0", "1"]


def test_written_matrix_reads_back_exactly(tmp_path):
    u = sm_propagator(BichromaticParams(g=0.2, delta=1.3, n_ions=3))
    path = write_matrix(tmp_path / "gate.txt", u)
    np.testing.assert_array_equal(read_matrix(path), u)


@pytest.mark.parametrize("text", ["# dim 2\n1 0 0 0\n", "1 0 0\n0 1 0\n", "1 0 0 0 0 0\n0 0 1 0 0 0\n0 0 0 0 1 0\n"])
def test_malformed_text(text):
    with pytest.raises(DimensionMismatchError):
        parse_matrix(text)
