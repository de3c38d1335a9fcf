"""
Synthesize API: run the seeded entangler-count search for a SynthesisProblem.

The search is CPU-bound; the route is a plain def so it runs in the worker
thread pool instead of blocking the event loop.
"""
import logging

from fastapi import APIRouter, HTTPException, status

from globalgates.core.errors import GlobalGatesError
from globalgates.schemas.synthesis import SynthesisProblem, SynthesisResult
from globalgates.synthesis.search import synthesize

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/synthesize", response_model=SynthesisResult)
def synthesize_circuit(problem: SynthesisProblem) -> SynthesisResult:
    try:
        result = synthesize(problem)
    except GlobalGatesError as exc:
        logger.error("synthesize_circuit: %s", exc)
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc)) from exc
    logger.info(
        "synthesize_circuit: converged=%s entanglers=%d residual=%.3e",
        result.converged,
        result.entangler_count,
        result.residual_aligned,
    )
    return result
