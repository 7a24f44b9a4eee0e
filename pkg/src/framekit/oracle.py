"""Brute-force ground truth at desk scale.

Two independent routes to equal-measurement vector pairs:

* `cp_failure_pairs` constructs them from a complement-property violation,
  taking x orthogonal to one side of the partition and y to the other; then
  (x+y, x-y) have identical measurements.
* `kernel_pair_search` scans the kernel of the lifted map for elements of
  eigen-signature (one positive, one negative, rest zero), which are exactly
  the differences xx^T - yy^T of equal-measurement pairs.

Both emit validated EqualMeasurementPair certificates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm, qmc

from ._linalg import orthonormal_complement
from .frames import Frame, measure
from .reconstruction import LiftedSystem, build_lifted, vech, weakly_same_phase

PAIR_TOL = 1e-8  # certificate tolerance fixed by the EqualMeasurementPair contract


@dataclass(eq=False)
class EqualMeasurementPair:
    """Vectors x, y with measure(f, x) = measure(f, y), plus the kernel certificate."""

    x: np.ndarray
    y: np.ndarray
    certificate: np.ndarray  # Q = xx^T - yy^T

    @classmethod
    def build(cls, f: Frame, x, y, lifted: LiftedSystem | None = None) -> "EqualMeasurementPair":
        x = np.asarray(x, dtype=float).ravel()
        y = np.asarray(y, dtype=float).ravel()
        q = np.outer(x, x) - np.outer(y, y)
        mx, my = measure(f, x), measure(f, y)
        scale = 1.0 + max(float(np.max(np.abs(mx))), float(np.max(np.abs(my))))
        if np.max(np.abs(mx - my)) > PAIR_TOL * scale:
            raise ValueError("pair does not have equal measurements")
        ls = lifted if lifted is not None else build_lifted(f)
        image = ls.coeff_matrix @ vech(q)
        kscale = 1.0 + float(np.abs(ls.coeff_matrix).max()) * float(np.linalg.norm(vech(q)))
        if np.linalg.norm(image) > PAIR_TOL * kscale:
            raise ValueError("certificate is not in the kernel of the lifted map")
        return cls(x=x, y=y, certificate=q)

    @classmethod
    def try_build(cls, f: Frame, x, y, lifted: LiftedSystem | None = None):
        try:
            return cls.build(f, x, y, lifted=lifted)
        except ValueError:
            return None

    def to_dict(self) -> dict:
        return {"x": self.x.tolist(), "y": self.y.tolist()}


def _subset_indices(witness) -> tuple[int, ...]:
    return tuple(getattr(witness, "subset", witness))


def cp_failure_pairs(f: Frame, witness, samples: int = 8, rng_seed: int = 0) -> list[EqualMeasurementPair]:
    """Equal-measurement pairs (x+y, x-y) built from a CP violation.

    x is sampled in the orthogonal complement of span{phi_i : i in I} and y in
    the complement of the other side, both unit norm, deterministically under
    the seed.  Every returned pair is certificate-checked.
    """
    subset = _subset_indices(witness)
    complement = tuple(i for i in range(f.n) if i not in subset)
    basis_x = orthonormal_complement(f.vectors[list(subset)], f.tol.eps_rank)
    basis_y = orthonormal_complement(f.vectors[list(complement)], f.tol.eps_rank)
    if basis_x.shape[1] == 0 or basis_y.shape[1] == 0:
        raise ValueError("witness is not a genuine complement-property violation")
    ls = build_lifted(f)
    rng = np.random.default_rng(rng_seed)
    pairs = []
    for _ in range(samples):
        x = basis_x @ rng.standard_normal(basis_x.shape[1])
        y = basis_y @ rng.standard_normal(basis_y.shape[1])
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        if nx < 1e-12 or ny < 1e-12:
            continue
        x, y = x / nx, y / ny
        pairs.append(EqualMeasurementPair.build(f, x + y, x - y, lifted=ls))
    return pairs


def _kernel_candidates(d: int, grid: int, rng_seed: int) -> np.ndarray:
    """Unit directions in kernel coordinates: exact +/- basis for d = 1,
    a seeded low-discrepancy sphere grid for d >= 2."""
    if d == 1:
        return np.array([[1.0], [-1.0]])
    sampler = qmc.Halton(d=d, scramble=True, seed=rng_seed)
    points = sampler.random(grid)
    gauss = norm.ppf(points)
    good = np.all(np.isfinite(gauss), axis=1)
    gauss = gauss[good]
    norms = np.linalg.norm(gauss, axis=1)
    keep = norms > 1e-12
    return gauss[keep] / norms[keep, None]


def kernel_pair_search(
    f: Frame, grid: int = 10_000, rng_seed: int = 0, lifted: LiftedSystem | None = None
):
    """Search the lifted kernel for a pair with equal measurements that fails
    weakly_same_phase.  Returns the first such EqualMeasurementPair in grid
    order, or None.

    Complete for kernel dimension <= 1; for d >= 2 the sphere scan is a
    documented heuristic and a None result is inconclusive.
    """
    ls = lifted if lifted is not None else build_lifted(f)
    d = ls.kernel_dim
    if d == 0:
        return None
    m = f.dim
    basis = ls.kernel_basis()
    candidates = _kernel_candidates(d, grid, rng_seed)
    if candidates.size == 0:
        return None

    vecs = candidates @ basis.T  # (grid, q) kernel elements in vech coordinates
    rows = np.array([j for j, _ in ls.pairs])
    cols = np.array([k for _, k in ls.pairs])
    mats = np.zeros((candidates.shape[0], m, m))
    mats[:, rows, cols] = vecs
    mats[:, cols, rows] = vecs
    w, v = np.linalg.eigh(mats)

    zero_tol = f.tol.eps_val * np.maximum(np.abs(w).max(axis=1), 1.0)
    pos_ok = w[:, -1] > zero_tol
    neg_ok = w[:, 0] < -zero_tol
    mid_ok = (
        np.ones(len(mats), dtype=bool)
        if m < 3
        else np.all(np.abs(w[:, 1:-1]) <= zero_tol[:, None], axis=1)
    )
    hits = np.flatnonzero(pos_ok & neg_ok & mid_ok)

    for idx in hits:
        x = np.sqrt(w[idx, -1]) * v[idx, :, -1]
        y = np.sqrt(-w[idx, 0]) * v[idx, :, 0]
        pair = EqualMeasurementPair.try_build(f, x, y, lifted=ls)
        if pair is not None and not weakly_same_phase(x, y, tol=f.tol):
            return pair
    return None


def random_frame(n: int, m: int, rng_seed) -> Frame:
    """Gaussian random frame; accepts a seed or a numpy Generator/SeedSequence."""
    rng = np.random.default_rng(rng_seed)
    return Frame(rng.standard_normal((n, m)))


def minimality_scan(m: int, trials: int = 200, rng_seed: int = 0, grid: int = 512) -> dict:
    """Empirical check that n = 2m-3 vectors never do weak phase retrieval.

    Each trial draws a random frame and requires either a Disproven verdict or
    an explicit oracle counterexample; trials where neither holds are reported
    as survivors (expected none).
    """
    if not 2 <= m <= 4:
        raise ValueError(f"minimality_scan supports 2 <= m <= 4, got m={m}")
    from .properties import weak_pr_verdict  # deferred: properties imports this module

    n = 2 * m - 3
    seeds = np.random.SeedSequence(rng_seed).spawn(trials)
    survivors = []
    disproven = 0
    counterexamples = 0
    for t in range(trials):
        f = random_frame(n, m, seeds[t])
        verdict = weak_pr_verdict(f, grid=grid, seed=rng_seed)
        if verdict.status == "Disproven":
            disproven += 1
            continue
        pair = kernel_pair_search(f, grid=grid, rng_seed=rng_seed)
        if pair is not None:
            counterexamples += 1
        else:
            survivors.append(t)
    return {
        "m": m,
        "n": n,
        "trials": trials,
        "seed": rng_seed,
        "disproven": disproven,
        "counterexamples": counterexamples,
        "survivors": survivors,
    }
