from pydantic import BaseModel, Field


class VerificationReport(BaseModel):
    """Distances between an evaluated circuit and a target unitary."""

    aligned_distance: float = Field(..., ge=0, description="Elementwise |F - e^{i theta} U| sum at the aligning phase.")
    raw_distance: float = Field(..., ge=0, description="Elementwise |F - U| sum without phase alignment.")
    passed: bool = Field(..., description="aligned_distance < tolerance.")
    aligning_phase: float = Field(..., description="Global phase theta applied to the circuit matrix, radians.")
    tolerance: float = Field(..., gt=0, description="Tolerance the report was judged against.")
