import numpy as np
import pytest

from globalgates.core.catalog import unequal_coupling_matrix
from globalgates.enums import CouplerKind
from globalgates.schemas.synthesis import CouplerModel


@pytest.fixture(autouse=True)
def _no_log_file(monkeypatch):
    # Keep test runs from writing logs/globalgates.log.
    monkeypatch.setenv("GLOBALGATES_LOG_DIR", "")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def global_g():
    return CouplerModel.default_for(CouplerKind.GLOBAL_G)


@pytest.fixture
def unequal_coupler():
    return CouplerModel.default_for(CouplerKind.COUPLING_U, unequal_coupling_matrix())


@pytest.fixture
def pair_coupler():
    return CouplerModel.default_for(CouplerKind.COUPLING_U, [[0.0, 1.0], [1.0, 0.0]])
