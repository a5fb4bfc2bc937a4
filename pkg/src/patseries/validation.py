"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def check_series(values, *, min_length: int = 0, name: str = "series") -> np.ndarray:
    """Coerce ``values`` to a 1-D float64 array of finite samples.

    Raises ValueError on non-1-D input, non-finite entries, or fewer than
    ``min_length`` samples.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if arr.size < min_length:
        raise ValueError(f"{name} needs at least {min_length} samples, got {arr.size}")
    return arr


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value


def check_positive_int(value: int, name: str, *, maximum: int | None = None) -> int:
    ivalue = int(value)
    if ivalue != value or ivalue < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    if maximum is not None and ivalue > maximum:
        raise ValueError(f"{name} must be <= {maximum}, got {ivalue}")
    return ivalue
