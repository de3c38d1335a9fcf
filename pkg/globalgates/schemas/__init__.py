from .gate_op import GateOp
from .circuit import Circuit
from .verification import VerificationReport
from .physics import BichromaticParams, TrapSpec, FockSimulationResult
from .synthesis import (
    CouplerModel,
    SynthesisProblem,
    SynthesisAttempt,
    SynthesisResult,
)
from .command import CommandResult

__all__ = [
    "GateOp",
    "Circuit",
    "VerificationReport",
    "BichromaticParams",
    "TrapSpec",
    "FockSimulationResult",
    "CouplerModel",
    "SynthesisProblem",
    "SynthesisAttempt",
    "SynthesisResult",
    "CommandResult",
]
