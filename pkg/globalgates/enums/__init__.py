from .gate_enums import *  # noqa: F401,F403
