"""
Physics API: MAGIC couplings, the bichromatic gate propagator, and the
Fock-space check of its closed form.
"""
import logging
from typing import List, Optional

import numpy as np
from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field

from globalgates.core.errors import GlobalGatesError
from globalgates.core.tensor import matrix_to_pairs, pairs_to_matrix
from globalgates.physics.bichromatic import gate_angle, sm_propagator
from globalgates.physics.fock import fock_simulate
from globalgates.physics.trap import default_relabelling, harmonic_coupling_matrix, magic_couplings, relabel_ions
from globalgates.schemas.physics import BichromaticParams, FockSimulationResult, TrapSpec

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/physics")

FOCK_TOLERANCE = 1e-6


class CouplingsRequest(BaseModel):
    trap: TrapSpec = Field(default_factory=TrapSpec, description="Trap and gradient.")
    relabel: Optional[List[int]] = Field(
        None, description="New 1-based label of each ion; defaults to [2, 1, 3] for three ions, [1, 2, 3] keeps trap order."
    )


class CouplingsResponse(BaseModel):
    dimensionless: List[List[float]]
    physical: List[List[float]]


class GateResponse(BaseModel):
    phi: float = Field(..., description="Gate angle 4 pi g^2 / delta^2.")
    matrix: List[List[List[float]]] = Field(..., description="Propagator as [re, im] pairs.")


class FockCheckRequest(BaseModel):
    params: BichromaticParams
    steps: Optional[int] = Field(None, ge=1, description="Integration steps override.")


class FockCheckResponse(BaseModel):
    deviation: float
    passed: bool
    simulation: FockSimulationResult


def _bad_request(where: str, exc: Exception) -> HTTPException:
    logger.error("%s: %s", where, exc)
    return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))


@router.post("/couplings", response_model=CouplingsResponse)
def couplings(body: CouplingsRequest) -> CouplingsResponse:
    try:
        dimensionless = harmonic_coupling_matrix(body.trap.n_ions)
        physical = magic_couplings(body.trap)
        relabel = body.relabel or default_relabelling(body.trap.n_ions)
        if relabel:
            dimensionless = relabel_ions(dimensionless, relabel)
            physical = relabel_ions(physical, relabel)
    except GlobalGatesError as exc:
        raise _bad_request("couplings", exc) from exc
    return CouplingsResponse(dimensionless=dimensionless.tolist(), physical=physical.tolist())


@router.post("/sm-gate", response_model=GateResponse)
def sm_gate(params: BichromaticParams) -> GateResponse:
    try:
        u = sm_propagator(params)
    except GlobalGatesError as exc:
        raise _bad_request("sm_gate", exc) from exc
    return GateResponse(phi=gate_angle(params.g, params.delta), matrix=matrix_to_pairs(u))


@router.post("/fock-check", response_model=FockCheckResponse)
def fock_check(body: FockCheckRequest) -> FockCheckResponse:
    params = body.params
    try:
        outcome = fock_simulate(params, params.gate_time, n_steps=body.steps)
    except GlobalGatesError as exc:
        raise _bad_request("fock_check", exc) from exc
    deviation = float(np.max(np.abs(pairs_to_matrix(outcome.spin_block) - sm_propagator(params))))
    passed = deviation < FOCK_TOLERANCE and outcome.motional_purity > 1 - FOCK_TOLERANCE
    return FockCheckResponse(deviation=deviation, passed=passed, simulation=outcome)
