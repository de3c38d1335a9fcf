import threading

import numpy as np
import pytest

from globalgates.core.errors import FockCutoffError, PhysicsError, SimulationCancelled
from globalgates.core.tensor import pairs_to_matrix
from globalgates.physics.bichromatic import sm_propagator
from globalgates.physics.fock import fock_simulate
from globalgates.schemas.physics import BichromaticParams

PARAMS = BichromaticParams(g=0.1, delta=1.0, n_ions=3, fock_cutoff=20)


def _deviation(outcome, params=PARAMS):
    return float(np.max(np.abs(pairs_to_matrix(outcome.spin_block) - sm_propagator(params))))


def test_zero_coupling_leaves_everything_alone():
    p = BichromaticParams(g=0.0, delta=1.0, n_ions=2, fock_cutoff=6)
    outcome = fock_simulate(p, p.gate_time)
    np.testing.assert_allclose(pairs_to_matrix(outcome.spin_block), np.eye(4), atol=1e-15)
    assert outcome.motional_purity == pytest.approx(1.0)


def test_matches_closed_form_at_gate_time():
    outcome = fock_simulate(PARAMS, PARAMS.gate_time)
    assert _deviation(outcome) < 1e-6
    assert outcome.motional_purity > 1 - 1e-6
    assert outcome.max_tail_population < 1e-10


def test_spin_and_motion_entangled_mid_gate():
    outcome = fock_simulate(PARAMS, np.pi / PARAMS.delta)
    assert outcome.motional_purity < 0.999


def test_error_shrinks_with_step_size():
    errors = [_deviation(fock_simulate(PARAMS, PARAMS.gate_time, n_steps=steps)) for steps in (400, 800, 1600)]
    assert errors[0] > errors[1] > errors[2]
    assert np.log2(errors[0] / errors[1]) >= 3


def test_small_cutoff_is_reported():
    p = BichromaticParams(g=0.3, delta=1.0, n_ions=3, fock_cutoff=4)
    with pytest.raises(FockCutoffError):
        fock_simulate(p, p.gate_time)


def test_cancellation():
    cancel = threading.Event()
    cancel.set()
    with pytest.raises(SimulationCancelled):
        fock_simulate(PARAMS, PARAMS.gate_time, cancel=cancel)


@pytest.mark.parametrize("kwargs", [{"initial_fock": 18}, {"n_steps": 0}])
def test_bad_arguments(kwargs):
    with pytest.raises(PhysicsError):
        fock_simulate(PARAMS, PARAMS.gate_time, **kwargs)
