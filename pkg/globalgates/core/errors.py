"""
Exception hierarchy for globalgates.

Every class derives from GlobalGatesError and from the builtin that best
describes it, so callers can catch either the package base or ValueError /
RuntimeError as usual.
"""


class GlobalGatesError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(GlobalGatesError, ValueError):
    """Matrix dimensions do not agree."""


class QubitIndexError(GlobalGatesError, ValueError):
    """Qubit index out of range or repeated."""


class GateDefinitionError(GlobalGatesError, ValueError):
    """A gate op is malformed (arity, missing angle, bad couplings)."""


class UnknownNameError(GlobalGatesError, ValueError):
    """Unknown target, catalog key or gate kind."""


class CircuitParseError(GlobalGatesError, ValueError):
    """A circuit document could not be parsed."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class OptimizationAborted(GlobalGatesError, RuntimeError):
    """A single optimization start hit a non-finite objective."""


class PhysicsError(GlobalGatesError, ValueError):
    """Invalid physical configuration or failed physics computation."""


class FockCutoffError(PhysicsError):
    """Motional population leaked to the top of the truncated Fock space."""


class IntegrationInstabilityError(PhysicsError):
    """The time integration lost norm beyond tolerance."""


class SimulationCancelled(GlobalGatesError, RuntimeError):
    """A long-running simulation was cancelled cooperatively."""


class EquilibriumError(PhysicsError):
    """Ion equilibrium positions did not converge."""


class SingularHessianError(PhysicsError):
    """Trap Hessian is singular or badly conditioned."""


class InvalidOptionError(GlobalGatesError, ValueError):
    """A run option (iteration cap, worker count, tolerance) is out of range."""
