"""Input validation helpers shared by the library and the estimators."""
from __future__ import annotations

import numpy as np

from .exceptions import FrameParseError


def as_float_array(a, name: str = "array") -> np.ndarray:
    """Coerce to a float64 ndarray and reject non-finite entries."""
    try:
        out = np.asarray(a, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FrameParseError(f"{name} is not numeric: {exc}") from exc
    if out.size and not np.all(np.isfinite(out)):
        raise FrameParseError(f"{name} contains non-finite entries")
    return out


def check_vectors(a, name: str = "vectors") -> np.ndarray:
    """Validate a 2-D (n, m) stack of row vectors; returns a read-only copy."""
    out = as_float_array(a, name)
    if out.ndim != 2:
        raise FrameParseError(f"{name} must be 2-D (rows are vectors), got shape {out.shape}")
    n, m = out.shape
    if n < 1 or m < 1:
        raise FrameParseError(f"{name} must be non-empty, got shape {out.shape}")
    out = out.copy()
    out.setflags(write=False)
    return out


def check_vector(x, dim: int, name: str = "x") -> np.ndarray:
    out = as_float_array(x, name).ravel()
    if out.shape != (dim,):
        raise ValueError(f"{name} must have length {dim}, got {out.shape}")
    return out


def check_measurements(y, n: int) -> np.ndarray:
    """Validate a length-n vector of squared magnitudes (entries must be >= 0)."""
    out = as_float_array(y, "measurements").ravel()
    if out.shape != (n,):
        raise FrameParseError(f"expected {n} measurements, got {out.size}")
    if out.size and out.min() < 0.0:
        raise FrameParseError(f"measurements must be nonnegative, found {float(out.min())}")
    return out


def check_square(T, m: int, name: str = "T") -> np.ndarray:
    out = as_float_array(T, name)
    if out.shape != (m, m):
        raise ValueError(f"{name} must be {m}x{m}, got {out.shape}")
    return out
