from enum import Enum, IntEnum


class GateKind(str, Enum):
    PAULI_X = "PauliX"
    PAULI_Y = "PauliY"
    PAULI_Z = "PauliZ"
    HADAMARD = "Hadamard"
    S = "S"
    T = "T"
    T_DAGGER = "TDagger"
    SQRT_NOT = "SqrtNot"
    PULSE = "Pulse"
    PHASE = "Phase"
    CNOT = "CNOT"
    CPHASE = "CPhase"
    ISING_ZZ = "IsingZZ"
    GLOBAL_G = "GlobalG"
    GLOBAL_GG = "GlobalGG"
    NEAREST_N = "NearestN"
    COUPLING_U = "CouplingU"


class CouplerKind(str, Enum):
    """Entangler families the synthesizer can build circuits from."""

    GLOBAL_G = "global-g"
    GLOBAL_GG = "global-gg"
    NEAREST_N = "nearest-n"
    COUPLING_U = "coupling-u"


class SpinBasis(str, Enum):
    X = "x"
    Z = "z"


class ObjectiveMode(str, Enum):
    ALIGNED_SQUARED = "aligned-squared"
    RAW = "raw"


class FinalLayer(str, Enum):
    PHASE = "phase"
    FULL = "full"


class TargetName(str, Enum):
    TOFFOLI = "toffoli"
    CCPHASE = "ccphase"
    CCCPHASE = "cccphase"
    FREDKIN = "fredkin"
    CNOT = "cnot"
    CPHASE = "cphase"


class ExitCode(IntEnum):
    OK = 0
    FAILED = 1
    USAGE = 2
    INTERNAL = 3
