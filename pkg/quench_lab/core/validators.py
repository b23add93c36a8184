"""Validators for numeric arguments shared by the services."""

import math
from typing import Optional, Tuple

from quench_lab.core.exceptions import InvalidInputError


def require_positive(value: float, name: str) -> float:
    """Ensure a value is finite and strictly positive.

    Args:
        value: The value to check
        name: Argument name used in the error message

    Returns:
        The value, unchanged

    Raises:
        InvalidInputError: If the value is not a finite positive number
    """
    if not math.isfinite(value) or value <= 0:
        raise InvalidInputError(
            f"{name} must be positive", details={"field": name, "value": value}
        )
    return value


def require_non_negative(value: float, name: str) -> float:
    """Ensure a value is finite and not negative."""
    if not math.isfinite(value) or value < 0:
        raise InvalidInputError(
            f"{name} must be non-negative", details={"field": name, "value": value}
        )
    return value


def require_count(value: int, name: str, minimum: int = 1) -> int:
    """Ensure an integer count is at least ``minimum``."""
    if int(value) != value or value < minimum:
        raise InvalidInputError(
            f"{name} must be an integer >= {minimum}",
            details={"field": name, "value": value},
        )
    return int(value)


def require_window(
    window: Tuple[float, float],
    bounds: Optional[Tuple[float, float]] = None,
    name: str = "window",
) -> Tuple[float, float]:
    """Validate a (v_min, v_max) fit window.

    Args:
        window: Lower and upper edge, both positive
        bounds: Optional (lo, hi) range the window must lie inside
        name: Argument name used in the error message

    Returns:
        The window as a float tuple

    Raises:
        InvalidInputError: If the window is empty, non-positive or out of bounds
    """
    v_min, v_max = float(window[0]), float(window[1])
    if not (0 < v_min < v_max) or not math.isfinite(v_max):
        raise InvalidInputError(
            f"{name} must satisfy 0 < v_min < v_max",
            details={"field": name, "value": [v_min, v_max]},
        )
    if bounds is not None:
        lo, hi = bounds
        if v_max > max(abs(lo), abs(hi)):
            raise InvalidInputError(
                f"{name} extends beyond the histogram range",
                details={"field": name, "value": [v_min, v_max], "range": [lo, hi]},
            )
    return v_min, v_max


def require_spin(S: float) -> int:
    """Validate a spin magnitude and return the Hilbert-space dimension 2S+1.

    Raises:
        InvalidInputError: If S is negative or 2S is not an integer
    """
    two_s = 2 * S
    if S < 0 or abs(two_s - round(two_s)) > 1e-12:
        raise InvalidInputError(
            "S must be a non-negative integer or half-integer",
            details={"field": "S", "value": S},
        )
    return int(round(two_s)) + 1
