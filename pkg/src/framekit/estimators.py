"""Scikit-learn style wrappers around the library.

FrameAnalyzer follows the fit-then-inspect pattern: X holds the frame vectors
as rows and the fitted attributes carry the structural report.
WeakPhaseReconstructor mirrors SparseCoder: the frame is a constructor
parameter, fit is a no-op, and transform maps measurement rows to
reconstructed signal rows.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .frames import Frame, Tolerance, classify, measure
from .properties import (
    ENUMERATION_CAP,
    complement_property,
    is_full_spark,
    spark,
    weak_pr_verdict,
)
from .exceptions import InsufficientVectors
from .reconstruction import build_lifted, reconstruct
from .validation import as_float_array, check_vectors


class FrameAnalyzer(BaseEstimator):
    """Structural analysis of a frame given as rows of X.

    Parameters mirror the library tolerances; fitted attributes expose the
    classification report, spark, complement property, and the weak-PR
    verdict.  `summary()` returns the whole analysis as a JSON-able dict.
    """

    def __init__(
        self,
        eps_rank: float = 1e-9,
        eps_val: float = 1e-9,
        eps_residual: float = 1e-6,
        grid: int = 10_000,
        seed: int = 0,
        max_enumeration: int = ENUMERATION_CAP,
    ):
        self.eps_rank = eps_rank
        self.eps_val = eps_val
        self.eps_residual = eps_residual
        self.grid = grid
        self.seed = seed
        self.max_enumeration = max_enumeration

    def _tolerance(self) -> Tolerance:
        return Tolerance(
            eps_rank=self.eps_rank, eps_val=self.eps_val, eps_residual=self.eps_residual
        )

    def fit(self, X, y=None):
        f = Frame(check_vectors(X, "X"), tol=self._tolerance())
        cap = self.max_enumeration
        self.frame_ = f
        self.n_features_in_ = f.dim
        self.report_ = classify(f)
        self.spark_ = spark(f, cap=cap)
        try:
            self.full_spark_ = is_full_spark(f, cap=cap)
        except InsufficientVectors:
            self.full_spark_ = None
        cp_ok, witness = complement_property(f, cap=cap)
        self.complement_property_ = cp_ok
        self.witness_ = witness
        self.verdict_ = weak_pr_verdict(f, grid=self.grid, seed=self.seed, cap=cap)
        return self

    def summary(self) -> dict:
        check_is_fitted(self, "verdict_")
        return {
            "frame": self.frame_.to_dict(),
            "report": self.report_.to_dict(),
            "spark": self.spark_,
            "full_spark": self.full_spark_,
            "complement_property": self.complement_property_,
            "cp_witness": self.witness_.to_dict() if self.witness_ else None,
            "does_phase_retrieval": self.complement_property_,
            "does_weak_phaseless": self.complement_property_,
            "verdict": self.verdict_.to_dict(),
        }


class WeakPhaseReconstructor(TransformerMixin, BaseEstimator):
    """Reconstruct signals from squared-magnitude measurement rows.

    transform(Y) treats each row of Y as one measurement vector of length n
    and returns the representative reconstruction (one row per input, length
    m), defined up to per-component sign flips; use solve() for the full
    WeakSolution of a single measurement vector.
    """

    def __init__(
        self,
        frame_vectors=None,
        eps_rank: float = 1e-9,
        eps_val: float = 1e-9,
        eps_residual: float = 1e-6,
    ):
        self.frame_vectors = frame_vectors
        self.eps_rank = eps_rank
        self.eps_val = eps_val
        self.eps_residual = eps_residual

    def fit(self, X=None, y=None):
        if self.frame_vectors is None:
            raise ValueError("frame_vectors must be provided at construction")
        tol = Tolerance(
            eps_rank=self.eps_rank, eps_val=self.eps_val, eps_residual=self.eps_residual
        )
        self.frame_ = Frame(check_vectors(self.frame_vectors, "frame_vectors"), tol=tol)
        self.lifted_ = build_lifted(self.frame_)
        self.n_features_in_ = self.frame_.n
        self.determined_pairs_ = [
            (j, k)
            for j in range(self.frame_.dim)
            for k in range(j, self.frame_.dim)
            if self.lifted_.is_determined(j, k)
        ]
        return self

    def solve(self, y):
        check_is_fitted(self, "lifted_")
        return reconstruct(self.frame_, y, lifted=self.lifted_)

    def transform(self, Y) -> np.ndarray:
        check_is_fitted(self, "lifted_")
        Y = as_float_array(Y, "Y")
        if Y.ndim == 1:
            Y = Y.reshape(1, -1)
        if Y.ndim != 2 or Y.shape[1] != self.frame_.n:
            raise ValueError(f"Y must have {self.frame_.n} columns, got shape {Y.shape}")
        out = np.empty((Y.shape[0], self.frame_.dim))
        for i, row in enumerate(Y):
            out[i] = self.solve(row).representative
        return out

    def predict(self, Y) -> np.ndarray:
        return self.transform(Y)

    def measure_signals(self, X) -> np.ndarray:
        """Forward map: squared measurements for each signal row of X."""
        check_is_fitted(self, "lifted_")
        X = as_float_array(X, "X")
        if X.ndim == 1:
            X = X.reshape(1, -1)
        return np.vstack([measure(self.frame_, row) for row in X])
