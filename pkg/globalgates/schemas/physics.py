import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

from globalgates.enums import SpinBasis

YB171_MASS = 170.9363258 * constants.atomic_mass
ELECTRON_G_FACTOR = abs(constants.physical_constants["electron g factor"][0])
BOHR_MAGNETON = constants.physical_constants["Bohr magneton"][0]


class BichromaticParams(BaseModel):
    """Inputs of the bichromatic (or sigma-z Raman) global gate."""

    model_config = ConfigDict(frozen=True)

    g: float = Field(..., ge=0, description="Spin-phonon coupling rate (angular frequency).")
    delta: float = Field(..., description="Detuning from the c.m. mode (angular frequency, nonzero).")
    n_ions: int = Field(3, ge=2, le=4, description="Number of ions addressed uniformly.")
    basis: SpinBasis = Field(SpinBasis.X, description="Spin operator of the drive: x (bichromatic) or z (Raman).")
    fock_cutoff: int = Field(20, ge=2, description="Fock-space truncation for the oracle simulation.")
    lamb_dicke_eta: Optional[float] = Field(None, gt=0, description="Single-ion Lamb-Dicke parameter.")
    rabi_omega: Optional[float] = Field(None, gt=0, description="Rabi frequency unit.")

    @model_validator(mode="after")
    def _check(self) -> "BichromaticParams":
        if self.delta == 0 or not math.isfinite(self.delta):
            raise ValueError("delta must be finite and nonzero")
        if (self.lamb_dicke_eta is None) != (self.rabi_omega is None):
            raise ValueError("lamb_dicke_eta and rabi_omega must be given together")
        if self.lamb_dicke_eta is not None:
            expected = self.lamb_dicke_eta * self.rabi_omega / math.sqrt(self.n_ions)
            if abs(expected - self.g) > 1e-12 * max(1.0, abs(expected)):
                raise ValueError(f"g must equal eta * Omega / sqrt(N) = {expected!r}, got {self.g!r}")
        return self

    @property
    def gate_time(self) -> float:
        return 2 * math.pi / abs(self.delta)


class TrapSpec(BaseModel):
    """Linear Paul trap with a magnetic field gradient along the ion chain."""

    model_config = ConfigDict(frozen=True)

    n_ions: int = Field(3, ge=2, le=4, description="Number of ions.")
    gradient_b: float = Field(20.0, gt=0, description="Magnetic field gradient, T/m.")
    g_factor: float = Field(ELECTRON_G_FACTOR, gt=0, description="Electron g-factor.")
    bohr_magneton: float = Field(BOHR_MAGNETON, gt=0, description="Bohr magneton, J/T.")
    axial_frequency: float = Field(2 * math.pi * 100e3, gt=0, description="Axial trap frequency, rad/s.")
    ion_mass: float = Field(YB171_MASS, gt=0, description="Ion mass, kg.")


class FockSimulationResult(BaseModel):
    """Outcome of the truncated spin x Fock-space integration."""

    spin_block: list[list[list[float]]] = Field(..., description="Spin propagator at the initial Fock level, [re, im] pairs.")
    time: float = Field(..., description="Evolution time.")
    steps: int = Field(..., ge=0, description="Integration steps taken.")
    motional_purity: float = Field(..., description="Purity of the motional state for the probe spin input.")
    max_tail_population: float = Field(..., ge=0, description="Largest population seen in the top two Fock levels.")
    norm_drift: float = Field(..., ge=0, description="Largest deviation of a column norm from 1.")
