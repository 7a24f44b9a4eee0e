"""Structural frame properties: spark, complement property, and the
three-valued weak-phase-retrieval verdict.

The verdict is three-valued on purpose: the theory gives necessary conditions
(cardinality, full spark at the minimal count) and one sufficient condition
(all cross products recoverable from the lift), but no complete decision
procedure.  Unknown is an honest output, not a failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._linalg import orthonormal_rowspan, pivoted_rank
from .exceptions import BudgetExhausted, EnumerationCapExceeded, InsufficientVectors
from .frames import Frame
from .oracle import kernel_pair_search
from .reconstruction import LiftedSystem, build_lifted

ENUMERATION_CAP = 24

PROVEN = "Proven"
DISPROVEN = "Disproven"
UNKNOWN = "Unknown"

_EVIDENCE_BY_STATUS = {
    PROVEN: {"CrossProductRecovery", "StandardBasisShortcut"},
    DISPROVEN: {"CardinalityBound", "NotFullSparkAtMinimal", "CounterexamplePair"},
    UNKNOWN: {"None"},
}


@dataclass(frozen=True)
class PartitionWitness:
    """A partition (I, I^c) where neither side spans: a CP violation."""

    subset: tuple[int, ...]
    rank_subset: int
    rank_complement: int

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "rank_subset": self.rank_subset,
            "rank_complement": self.rank_complement,
        }


@dataclass(eq=False)
class Verdict:
    status: str
    evidence_kind: str
    detail: dict = field(default_factory=dict)
    counterexample: tuple[np.ndarray, np.ndarray] | None = None

    def __post_init__(self):
        allowed = _EVIDENCE_BY_STATUS.get(self.status)
        if allowed is None:
            raise ValueError(f"unknown verdict status {self.status!r}")
        if self.evidence_kind not in allowed:
            raise ValueError(
                f"evidence {self.evidence_kind!r} is not valid for status {self.status!r}"
            )
        if (self.evidence_kind == "CounterexamplePair") != (self.counterexample is not None):
            raise ValueError("counterexample vectors go with CounterexamplePair evidence only")

    def to_dict(self) -> dict:
        evidence: dict = {"kind": self.evidence_kind}
        evidence.update(self.detail)
        if self.counterexample is not None:
            x, y = self.counterexample
            evidence["x"] = x.tolist()
            evidence["y"] = y.tolist()
        return {"status": self.status, "evidence": evidence}


def _check_cap(f: Frame, cap: int, what: str):
    if f.n > cap:
        raise EnumerationCapExceeded(
            f"{what} enumerates subsets of {f.n} vectors; cap is {cap} "
            f"(raise FRAMEKIT_MAX_N if you really mean it)"
        )


def spark(f: Frame, cap: int = ENUMERATION_CAP) -> int:
    """Cardinality of the smallest linearly dependent subset (n+1 if none)."""
    _check_cap(f, cap, "spark")
    eps = f.tol.eps_rank
    for size in range(1, min(f.n, f.dim) + 1):
        for subset in itertools.combinations(range(f.n), size):
            if pivoted_rank(f.vectors[list(subset)], eps) < size:
                return size
    return f.dim + 1 if f.n > f.dim else f.n + 1


def is_full_spark(f: Frame, cap: int = ENUMERATION_CAP) -> bool:
    """True iff every m-subset of the n >= m vectors has rank m."""
    if f.n < f.dim:
        raise InsufficientVectors(f"full spark needs n >= m, got n={f.n} < m={f.dim}")
    _check_cap(f, cap, "is_full_spark")
    eps = f.tol.eps_rank
    return all(
        pivoted_rank(f.vectors[list(subset)], eps) == f.dim
        for subset in itertools.combinations(range(f.n), f.dim)
    )


def complement_property(f: Frame, cap: int = ENUMERATION_CAP):
    """Check span{phi_i : i in I} = R^m or span{phi_i : i in I^c} = R^m for
    every partition.  Returns (True, None) or (False, first witness).

    Partitions are unordered, so index 0 is fixed inside I; enumeration is by
    ascending bitmask over the remaining indices, which makes the first
    witness deterministic.
    """
    _check_cap(f, cap, "complement_property")
    n, m = f.n, f.dim
    eps = f.tol.eps_rank
    rows = f.vectors

    def rank_of(indices):
        if not indices:
            return 0
        return pivoted_rank(rows[list(indices)], eps)

    for mask in range(2 ** (n - 1)):
        subset = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1]
        if len(subset) >= m and rank_of(subset) == m:
            continue
        complement = [i for i in range(n) if i not in subset]
        if len(complement) >= m and rank_of(complement) == m:
            continue
        witness = PartitionWitness(
            subset=tuple(subset),
            rank_subset=rank_of(subset),
            rank_complement=rank_of(complement),
        )
        return False, witness
    return True, None


def does_phase_retrieval(f: Frame, cap: int = ENUMERATION_CAP) -> bool:
    """Phase retrieval in R^m is equivalent to the complement property."""
    ok, _ = complement_property(f, cap=cap)
    return ok


def does_weak_phaseless(f: Frame, cap: int = ENUMERATION_CAP) -> bool:
    """Weak phaseless reconstruction coincides with phaseless reconstruction
    in R^m, hence with the complement property."""
    return does_phase_retrieval(f, cap=cap)


def cross_product_recoverable(f: Frame, lifted: LiftedSystem | None = None):
    """Whether every off-diagonal product x_j x_k is pinned by the lift.

    Returns (flag, recovery_map): recovery_map maps each pair (j, k), j < k,
    to row weights w such that w @ M equals the selector of that product.
    None when the flag is False.
    """
    ls = lifted if lifted is not None else build_lifted(f)
    m = f.dim
    recovery = {}
    for j in range(m):
        for k in range(j + 1, m):
            w = ls.recovery_weights(j, k)
            if w is None:
                return False, None
            recovery[(j, k)] = w
    return True, recovery


def _contains_standard_basis(f: Frame) -> bool:
    """True iff every coordinate direction e_i appears among the rows up to
    nonzero scale (row supported on exactly one coordinate)."""
    eps = f.tol.eps_val
    covered = set()
    for row in f.vectors:
        nz = np.flatnonzero(np.abs(row) > eps)
        if nz.size == 1:
            covered.add(int(nz[0]))
    return len(covered) == f.dim


def weak_pr_verdict(
    f: Frame,
    grid: int = 10_000,
    seed: int = 0,
    cap: int = ENUMERATION_CAP,
) -> Verdict:
    """Three-valued weak-phase-retrieval decision.

    Cascade, first hit wins:
      1. n < 2m-2                      -> Disproven / CardinalityBound
      2. n = 2m-2 and not full spark   -> Disproven / NotFullSparkAtMinimal
      3. oracle finds a counterexample -> Disproven / CounterexamplePair
      4. cross products recoverable    -> Proven / CrossProductRecovery
         (StandardBasisShortcut when the frame contains the standard basis:
         recovery then upgrades to full phaseless reconstruction)
      5. otherwise                     -> Unknown / None

    Step 3 runs before step 4 so a concrete counterexample always beats a
    would-be sufficiency bug.  m = 1 never reaches steps 2-3 with content:
    any single nonzero coordinate is trivially recovered up to sign.
    """
    n, m = f.n, f.dim
    required = 2 * m - 2
    if n < required:
        return Verdict(
            status=DISPROVEN,
            evidence_kind="CardinalityBound",
            detail={"n": n, "m": m, "required": required},
        )
    if n == required and m >= 2 and not is_full_spark(f, cap=cap):
        return Verdict(
            status=DISPROVEN,
            evidence_kind="NotFullSparkAtMinimal",
            detail={"n": n, "m": m, "spark": spark(f, cap=cap), "required_spark": m + 1},
        )
    ls = build_lifted(f)
    pair = kernel_pair_search(f, grid=grid, rng_seed=seed, lifted=ls)
    if pair is not None:
        return Verdict(
            status=DISPROVEN,
            evidence_kind="CounterexamplePair",
            counterexample=(pair.x, pair.y),
        )
    ok, recovery = cross_product_recoverable(f, lifted=ls)
    if ok:
        kind = "StandardBasisShortcut" if _contains_standard_basis(f) else "CrossProductRecovery"
        pairs = sorted(recovery)
        return Verdict(
            status=PROVEN,
            evidence_kind=kind,
            detail={"recoverable_pairs": [list(p) for p in pairs]},
        )
    return Verdict(status=UNKNOWN, evidence_kind="None", detail={"kernel_dim": ls.kernel_dim})


def extend_to_full_spark(f: Frame, rng_seed: int = 0, max_tries: int = 10_000) -> np.ndarray:
    """For a full-spark frame with n = 2m-2: sample a unit vector psi off all
    C(n, m-1) hyperplanes span{phi_i : i in I}, making the extension a
    phase-retrieval frame.  Deterministic under the seed."""
    n, m = f.n, f.dim
    if n != 2 * m - 2:
        raise ValueError(f"extension requires n = 2m-2 = {2 * m - 2}, got n = {n}")
    if m >= 2 and not is_full_spark(f):
        raise ValueError("extension requires a full-spark frame")
    eps = f.tol.eps_val
    bases = [
        orthonormal_rowspan(f.vectors[list(subset)], f.tol.eps_rank)
        for subset in itertools.combinations(range(n), m - 1)
    ]
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_tries):
        psi = rng.standard_normal(m)
        norm = np.linalg.norm(psi)
        if norm < 1e-12:
            continue
        psi /= norm
        if all(np.linalg.norm(psi - b @ (b.T @ psi)) > eps for b in bases):
            return psi
    raise BudgetExhausted(f"no admissible extension vector found in {max_tries} draws")
