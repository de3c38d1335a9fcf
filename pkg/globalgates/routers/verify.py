"""
Verify API: compare a circuit (inline or from the catalog) with a target gate.
"""
import logging
from typing import Optional

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field

from globalgates.core.catalog import catalog_entry
from globalgates.core.circuit import entangler_count, phase_groups, verify
from globalgates.core.errors import GlobalGatesError, UnknownNameError
from globalgates.core.targets import target_matrix
from globalgates.enums import TargetName
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.verification import VerificationReport

logger = logging.getLogger(__name__)

router = APIRouter()


class VerifyRequest(BaseModel):
    """Either a catalog key or an inline circuit, plus the target to compare with."""

    catalog_key: Optional[str] = Field(None, description="Catalog key.")
    circuit: Optional[Circuit] = Field(None, description="Inline circuit (angles in radians).")
    target: Optional[TargetName] = Field(None, description="Target; defaults to the catalog entry's own.")
    tolerance: Optional[float] = Field(None, gt=0, description="Aligned-distance tolerance.")


class VerifyResponse(BaseModel):
    target: TargetName
    entanglers: int
    phase_groups: int
    report: VerificationReport


@router.post("/verify", response_model=VerifyResponse)
def verify_circuit(body: VerifyRequest) -> VerifyResponse:
    if (body.catalog_key is None) == (body.circuit is None):
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail="Give exactly one of catalog_key or circuit.",
        )
    try:
        if body.catalog_key is not None:
            entry = catalog_entry(body.catalog_key)
            circuit = entry.circuit
            target = body.target or entry.target
            tol = body.tolerance or entry.tolerance
        else:
            if body.target is None:
                raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail="target is required.")
            circuit, target, tol = body.circuit, body.target, body.tolerance
        report = verify(circuit, target_matrix(target), tol)
    except UnknownNameError as exc:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(exc)) from exc
    except GlobalGatesError as exc:
        logger.error("verify_circuit: %s", exc)
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc)) from exc

    logger.info("verify_circuit: %s vs %s passed=%s", circuit.name, target.value, report.passed)
    return VerifyResponse(
        target=target,
        entanglers=entangler_count(circuit),
        phase_groups=phase_groups(circuit),
        report=report,
    )
