"""Global entangling-gate circuits: construction, verification and synthesis."""

__version__ = "1.0.0"
