"""
Angle tokens: exact rational multiples of pi ("pi/8", "-5pi/8", "3pi/4",
"pi", "0") where the float is reproduced bit for bit, otherwise a
17-significant-digit decimal.
"""
import math
import re
from fractions import Fraction

MAX_PI_DENOMINATOR = 1024

_PI_TOKEN = re.compile(r"^\s*([+-]?)\s*(\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$", re.IGNORECASE)


def _pi_multiple(numerator: int, denominator: int) -> float:
    # Single evaluation order shared by format and parse keeps round trips exact.
    return numerator * math.pi / denominator


def format_angle(angle: float) -> str:
    angle = float(angle)
    if angle == 0.0:
        # Keep the sign of negative zero so the round trip is bit-exact.
        if math.copysign(1.0, angle) < 0:
            return "-0"
        return "0"
    ratio = Fraction(angle / math.pi).limit_denominator(MAX_PI_DENOMINATOR)
    num, den = ratio.numerator, ratio.denominator
    if num != 0 and _pi_multiple(num, den) == angle:
        sign = "-" if num < 0 else ""
        mag = "" if abs(num) == 1 else str(abs(num))
        return f"{sign}{mag}pi" if den == 1 else f"{sign}{mag}pi/{den}"
    return f"{angle:.17g}"


def parse_angle(token) -> float:
    """Parse a pi token or a decimal. Raises ValueError on anything else."""
    if isinstance(token, (int, float)) and not isinstance(token, bool):
        return float(token)
    text = str(token)
    match = _PI_TOKEN.match(text)
    if match:
        sign, num, den = match.groups()
        numerator = int(num) if num else 1
        if sign == "-":
            numerator = -numerator
        denominator = int(den) if den else 1
        if denominator == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return _pi_multiple(numerator, denominator)
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not an angle: {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite: {text!r}")
    return value
