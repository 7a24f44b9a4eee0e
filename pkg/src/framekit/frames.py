"""Finite real frames: the core container, spectral analytics, and file I/O.

A frame is stored as an (n, m) array whose rows are the frame vectors
phi_1, ..., phi_n in R^m.  Measurements of a signal x are the squared
inner products |<x, phi_i>|^2, in row order.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from ._linalg import jacobi_eigh
from .exceptions import FrameParseError, SingularOperator
from .validation import check_measurements, check_square, check_vector, check_vectors


@dataclass(frozen=True)
class Tolerance:
    """Numeric thresholds used throughout the library.

    eps_rank gates rank / row-space membership decisions, eps_val gates
    scalar zero tests (supports, signs, tightness), and eps_residual gates
    whether a measurement vector is accepted as consistent.
    """

    eps_rank: float = 1e-9
    eps_val: float = 1e-9
    eps_residual: float = 1e-6

    def __post_init__(self):
        for name in ("eps_rank", "eps_val", "eps_residual"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True, eq=False)
class Frame:
    """An indexed collection of n row vectors in R^m (n >= 1, m >= 1)."""

    vectors: np.ndarray
    tol: Tolerance = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "vectors", check_vectors(self.vectors, "frame vectors"))

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Frame(n={self.n}, dim={self.dim})"

    def to_dict(self) -> dict:
        return {"m": self.dim, "vectors": self.vectors.tolist()}


@dataclass(frozen=True)
class FrameReport:
    """Classification summary produced by :func:`classify`."""

    n: int
    dim: int
    lower_bound: float
    upper_bound: float
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    is_equal_norm: bool
    is_unit_norm: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_frame": self.is_frame,
            "is_tight": self.is_tight,
            "is_parseval": self.is_parseval,
            "is_equal_norm": self.is_equal_norm,
            "is_unit_norm": self.is_unit_norm,
        }


def frame_operator(f: Frame) -> np.ndarray:
    """The m x m positive semidefinite operator S = sum_i phi_i phi_i^T."""
    return f.vectors.T @ f.vectors


def frame_bounds(f: Frame) -> tuple[float, float]:
    """Optimal frame bounds (A, B): extreme eigenvalues of the frame operator."""
    w, _ = jacobi_eigh(frame_operator(f))
    return float(w[0]), float(w[-1])


def classify(f: Frame) -> FrameReport:
    a, b = frame_bounds(f)
    eps = f.tol.eps_val
    norms_sq = np.sum(f.vectors**2, axis=1)
    is_frame = a > f.tol.eps_rank
    return FrameReport(
        n=f.n,
        dim=f.dim,
        lower_bound=a,
        upper_bound=b,
        is_frame=is_frame,
        is_tight=is_frame and (b - a) <= eps * max(1.0, b),
        is_parseval=is_frame and abs(a - 1.0) <= eps and abs(b - 1.0) <= eps,
        is_equal_norm=bool(np.ptp(norms_sq) <= eps * max(1.0, norms_sq.max())),
        is_unit_norm=bool(np.max(np.abs(norms_sq - 1.0)) <= eps),
    )


def measure(f: Frame, x) -> np.ndarray:
    """Squared-magnitude measurements (<x, phi_i>)^2, i = 1..n."""
    x = check_vector(x, f.dim)
    return (f.vectors @ x) ** 2


def apply_invertible(f: Frame, T) -> Frame:
    """The frame {T phi_i} for an invertible m x m matrix T (rows map through T^T).

    Measurements of the new frame at x equal measurements of f at T^T x, so
    invertible images preserve every span-based property.
    """
    T = check_square(T, f.dim)
    w, _ = jacobi_eigh(T.T @ T)
    if w[0] <= f.tol.eps_rank * max(1.0, w[-1]):
        raise SingularOperator("operator T is singular at the working tolerance")
    return Frame(f.vectors @ T.T, tol=f.tol)


# ---------------------------------------------------------------------------
# file formats
#
# CSV: one frame vector per row, plain decimal entries.
# JSON: {"m": int, "vectors": [[...], ...]}.
# Measurements: one decimal per line, blank lines ignored.
# ---------------------------------------------------------------------------


def parse_frame_csv(text: str, tol: Tolerance = DEFAULT_TOLERANCE) -> Frame:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row if c.strip()]
        if not cells:
            continue
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise FrameParseError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise FrameParseError("frame file contains no vectors")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise FrameParseError("frame rows have inconsistent lengths")
    return Frame(np.array(rows, dtype=float), tol=tol)


def parse_frame_json(text: str, tol: Tolerance = DEFAULT_TOLERANCE) -> Frame:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "vectors" not in payload:
        raise FrameParseError('frame JSON must be an object with a "vectors" key')
    frame = Frame(check_vectors(payload["vectors"], "vectors"), tol=tol)
    declared = payload.get("m")
    if declared is not None and declared != frame.dim:
        raise FrameParseError(f'declared dimension m={declared} but vectors have length {frame.dim}')
    return frame


def load_frame(path, tol: Tolerance = DEFAULT_TOLERANCE) -> Frame:
    """Load a frame from a CSV or JSON file (sniffed from the content)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return parse_frame_json(text, tol=tol)
    return parse_frame_csv(text, tol=tol)


def load_measurements(path, n: int | None = None) -> np.ndarray:
    """Load squared-magnitude measurements: one decimal per line."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                continue
            try:
                values.append(float(s))
            except ValueError as exc:
                raise FrameParseError(f"line {lineno}: {exc}") from exc
    y = np.array(values, dtype=float)
    return check_measurements(y, n if n is not None else y.size)
