"""
Deterministic number formatting for everything the command line writes.
"""

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

SIGNIFICANT_DIGITS = 15


def round_float(x: float) -> float:
    """Round to 15 significant digits; non-finite values pass through."""
    if not math.isfinite(x):
        return x
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def format_float(x: float) -> str:
    return f"{round_float(float(x)):.{SIGNIFICANT_DIGITS}g}"


def normalize(value: Any) -> Any:
    """Recursively round floats and convert numpy scalars, tuples and fractions."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        return round_float(float(value))
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, list | tuple | np.ndarray):
        return [normalize(v) for v in value]
    return value


def dumps(value: Any, *, indent: int | None = 2) -> str:
    """JSON with sorted keys and 15-digit floats."""
    return json.dumps(normalize(value), indent=indent, sort_keys=True, allow_nan=False)


def dumps_line(value: Any) -> str:
    """Single-line JSON, as used for JSON lines and error payloads."""
    return json.dumps(normalize(value), sort_keys=True, separators=(", ", ": "))
