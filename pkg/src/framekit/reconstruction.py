"""Reconstruction from squared magnitudes via the lifted coefficient matrix.

Squared measurements are linear in the symmetric outer product xx^T:

    |<x, phi>|^2 = sum_j phi_j^2 x_j^2 + 2 sum_{j<k} phi_j phi_k x_j x_k

so each frame vector contributes one row of a coefficient matrix M acting on
vech(xx^T).  Everything downstream is linear algebra on M: which products
a_j a_k the measurements pin down (row-space membership), their values
(minimum-norm least squares), and finally a signal assembled from signs and
magnitudes of those products.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import InconsistentMeasurements, InconsistentSigns
from .frames import DEFAULT_TOLERANCE, Frame, Tolerance, measure
from .validation import check_measurements


def vech_pairs(m: int) -> list[tuple[int, int]]:
    """Column order of the lifted matrix: pairs (j, k), j <= k, lexicographic."""
    return [(j, k) for j in range(m) for k in range(j, m)]


def vech(X: np.ndarray) -> np.ndarray:
    """Stack the upper triangle of a symmetric matrix in vech_pairs order."""
    X = np.asarray(X, dtype=float)
    m = X.shape[0]
    return np.array([X[j, k] for j, k in vech_pairs(m)])


def unvech(v: np.ndarray, m: int) -> np.ndarray:
    X = np.zeros((m, m))
    for idx, (j, k) in enumerate(vech_pairs(m)):
        X[j, k] = X[k, j] = v[idx]
    return X


@dataclass(eq=False)
class LiftedSystem:
    """Coefficient matrix of the lifted measurement map plus its SVD cache.

    coeff_matrix has shape (n, m(m+1)/2); row i expands |<x, phi_i>|^2 with
    off-diagonal coefficients doubled so that columns index vech(xx^T).
    """

    frame: Frame
    coeff_matrix: np.ndarray
    pairs: list[tuple[int, int]]
    rank: int
    _u: np.ndarray
    _s: np.ndarray
    _vt: np.ndarray
    determined_mask: np.ndarray  # boolean, per vech column

    @property
    def kernel_dim(self) -> int:
        return len(self.pairs) - self.rank

    def kernel_basis(self) -> np.ndarray:
        """Orthonormal basis (columns) of ker(coeff_matrix) in vech coordinates."""
        return self._vt[self.rank:].T

    def solve_min_norm(self, y: np.ndarray) -> tuple[np.ndarray, float]:
        """Minimum-norm least-squares solution of M v = y and its residual."""
        r = self.rank
        coeffs = (self._u[:, :r].T @ y) / self._s[:r]
        v = self._vt[:r].T @ coeffs
        residual = float(np.linalg.norm(self.coeff_matrix @ v - y))
        return v, residual

    def is_determined(self, j: int, k: int) -> bool:
        """Whether the functional x -> x_j x_k is pinned by the measurements."""
        idx = self.pairs.index((min(j, k), max(j, k)))
        return bool(self.determined_mask[idx])

    def recovery_weights(self, j: int, k: int) -> np.ndarray | None:
        """Row weights w with w @ M = selector of x_j x_k, or None if undetermined."""
        if not self.is_determined(j, k):
            return None
        idx = self.pairs.index((min(j, k), max(j, k)))
        e = np.zeros(len(self.pairs))
        e[idx] = 1.0
        r = self.rank
        return self._u[:, :r] @ ((self._vt[:r] @ e) / self._s[:r])


def build_lifted(f: Frame) -> LiftedSystem:
    """Build the lifted system for a frame and self-check it against measure()."""
    m = f.dim
    pairs = vech_pairs(m)
    M = np.empty((f.n, len(pairs)))
    for i, phi in enumerate(f.vectors):
        M[i] = [phi[j] * phi[k] * (1.0 if j == k else 2.0) for j, k in pairs]

    u, s, vt = np.linalg.svd(M, full_matrices=True)
    cutoff = f.tol.eps_rank * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))

    # a vech functional is determined iff its selector sits in the row space
    row_basis = vt[:rank]
    selectors = np.eye(len(pairs))
    residuals = np.linalg.norm(selectors - row_basis.T @ row_basis, axis=0)
    threshold = f.tol.eps_rank * max(1.0, float(np.abs(M).max()))
    mask = residuals <= threshold

    ls = LiftedSystem(
        frame=f,
        coeff_matrix=M,
        pairs=pairs,
        rank=rank,
        _u=u,
        _s=s,
        _vt=vt,
        determined_mask=mask,
    )

    rng = np.random.default_rng(12345)
    for _ in range(5):
        x = rng.standard_normal(m)
        y = measure(f, x)
        lifted = M @ vech(np.outer(x, x))
        if np.linalg.norm(lifted - y) > 1e-10 * (1.0 + np.linalg.norm(y)):
            raise RuntimeError("lifted system failed its construction self-check")
    return ls


@dataclass(eq=False)
class ProductEstimate:
    """Recovered symmetric products p[j, k] ~ x_j x_k with a determined mask."""

    values: np.ndarray
    determined: np.ndarray
    residual: float

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def to_dict(self) -> dict:
        return {
            "values": self.values.tolist(),
            "determined": self.determined.tolist(),
            "residual": self.residual,
        }


def recover_products(ls: LiftedSystem, y) -> ProductEstimate:
    """Minimum-norm recovery of the products x_j x_k from measurements y.

    Raises InconsistentMeasurements when no signal can realize y, i.e. the
    least-squares residual exceeds eps_residual * (1 + ||y||).
    """
    y = check_measurements(y, ls.frame.n)
    v, residual = ls.solve_min_norm(y)
    tol = ls.frame.tol
    if residual > tol.eps_residual * (1.0 + np.linalg.norm(y)):
        raise InconsistentMeasurements(
            f"measurements are not consistent with the frame (residual {residual:.3e})",
            residual=residual,
        )
    m = ls.frame.dim
    values = unvech(v, m)
    determined = np.zeros((m, m), dtype=bool)
    for idx, (j, k) in enumerate(ls.pairs):
        determined[j, k] = determined[k, j] = ls.determined_mask[idx]
    return ProductEstimate(values=values, determined=determined, residual=residual)


class SolutionKind(str, Enum):
    FULL = "Full"
    WEAK_SIGNS = "WeakSigns"
    UNDETERMINED = "Underdetermined"


@dataclass(eq=False)
class WeakSolution:
    """A reconstruction, valid up to one global sign flip per component."""

    kind: SolutionKind
    representative: np.ndarray
    components: tuple[tuple[int, ...], ...]
    note: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "representative": self.representative.tolist(),
            "components": [list(c) for c in self.components],
            "free_parameters": self.note,
        }


def assemble(pe: ProductEstimate, tol: Tolerance = DEFAULT_TOLERANCE) -> WeakSolution:
    """Turn recovered products into a signal estimate.

    Builds the sign graph on the detected support (edges = determined
    off-diagonal products bounded away from zero), propagates signs from the
    lowest-index root of each connected component, and fills magnitudes from
    determined diagonals or the triangle identity |x_i| = sqrt(p_ij p_ik / p_jk).
    Coordinates whose magnitude stays free are reported, and the estimate kind
    is downgraded from Full accordingly.
    """
    m = pe.dim
    eps = tol.eps_val
    p, det = pe.values, pe.determined

    edges: dict[tuple[int, int], float] = {}
    for j in range(m):
        for k in range(j + 1, m):
            if det[j, k] and abs(p[j, k]) > eps:
                edges[(j, k)] = p[j, k]

    diag_mag: dict[int, float] = {}
    zero_coords: set[int] = set()
    for i in range(m):
        if not det[i, i]:
            continue
        if p[i, i] > eps:
            diag_mag[i] = float(np.sqrt(p[i, i]))
        elif p[i, i] < -eps:
            raise InconsistentSigns(f"determined square p[{i},{i}] = {p[i, i]:.3e} is negative")
        else:
            zero_coords.add(i)

    support = sorted(set(i for e in edges for i in e) | set(diag_mag))
    adjacency: dict[int, list[int]] = {i: [] for i in support}
    for j, k in edges:
        adjacency[j].append(k)
        adjacency[k].append(j)
    for i in support:
        adjacency[i].sort()

    # connected components with sign propagation; root = lowest index, sign +
    signs: dict[int, int] = {}
    components: list[tuple[int, ...]] = []
    for root in support:
        if root in signs:
            continue
        comp = [root]
        signs[root] = 1
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in adjacency[u]:
                s = signs[u] * (1 if edges[(min(u, v), max(u, v))] > 0 else -1)
                if v not in signs:
                    signs[v] = s
                    comp.append(v)
                    queue.append(v)
                elif signs[v] != s:
                    raise InconsistentSigns(
                        f"edge ({u},{v}) contradicts the propagated sign pattern"
                    )
        components.append(tuple(sorted(comp)))

    magnitudes: dict[int, float] = dict(diag_mag)
    for i in support:
        if i in magnitudes:
            continue
        neighbors = adjacency[i]
        for a in range(len(neighbors)):
            for b in range(a + 1, len(neighbors)):
                j, k = neighbors[a], neighbors[b]
                if not det[j, k] or abs(p[j, k]) <= eps:
                    continue
                val = p[i, j] * p[i, k] / p[j, k]
                if val < -eps:
                    raise InconsistentSigns(
                        f"triangle ({i},{j},{k}) yields negative squared magnitude"
                    )
                magnitudes[i] = float(np.sqrt(max(val, 0.0)))
                break
            if i in magnitudes:
                break

    free = [i for i in support if i not in magnitudes]

    # coordinates outside the support can still be pinned to zero: a determined
    # product x_i x_j = 0 against an edge endpoint (necessarily nonzero) forces x_i = 0
    edge_nodes = set(i for e in edges for i in e)
    for i in range(m):
        if i in support or i in zero_coords:
            continue
        for j in edge_nodes:
            a, b = min(i, j), max(i, j)
            if det[a, b] and abs(p[a, b]) <= eps:
                zero_coords.add(i)
                break

    # representative: free magnitudes are filled by propagating |p| along the
    # sign tree so the output still realizes every determined product shape
    representative = np.zeros(m)
    for comp in components:
        root = comp[0]
        if root in magnitudes:
            root_mag = magnitudes[root]
        else:
            nbr = adjacency[root][0]
            root_mag = float(np.sqrt(abs(edges[(min(root, nbr), max(root, nbr))])))
        mags = {root: root_mag}
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in adjacency[u]:
                if v in mags:
                    continue
                if v in magnitudes:
                    mags[v] = magnitudes[v]
                elif mags[u] > 0:
                    mags[v] = abs(edges[(min(u, v), max(u, v))]) / mags[u]
                else:
                    mags[v] = 0.0
                queue.append(v)
        for i in comp:
            representative[i] = signs[i] * mags[i]

    unconstrained = sorted(set(range(m)) - set(support) - zero_coords)
    if not support:
        kind = SolutionKind.UNDETERMINED
        note = "no coordinate is pinned by the measurements"
    elif len(components) == 1 and not free:
        kind = SolutionKind.FULL
        note = "unique up to one global sign"
        if unconstrained:
            note += f"; coordinates {unconstrained} carry no measurement information"
    else:
        kind = SolutionKind.WEAK_SIGNS
        parts = [f"{len(components)} sign component(s), one free sign flip each"]
        if free:
            parts.append(f"magnitudes free on coordinates {free}")
        if unconstrained:
            parts.append(f"coordinates {unconstrained} unconstrained")
        note = "; ".join(parts)

    return WeakSolution(
        kind=kind,
        representative=representative,
        components=tuple(components),
        note=note,
    )


def weakly_same_phase(x, y, field: str = "real", tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether some unimodular theta aligns the phases of x and y on their
    common support K = {i : |x_i| > eps_val and |y_i| > eps_val}.

    Real case: theta in {+1, -1}, tested via the product-sign criterion
    sgn(x_i x_j) = sgn(y_i y_j) on K.  Vacuously true when |K| <= 1.
    """
    if field not in ("real", "complex"):
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    dtype = complex if field == "complex" else float
    a = np.asarray(x, dtype=dtype).ravel()
    b = np.asarray(y, dtype=dtype).ravel()
    if a.shape != b.shape:
        raise ValueError("x and y must have equal length")
    eps = tol.eps_val
    k = np.flatnonzero((np.abs(a) > eps) & (np.abs(b) > eps))
    if k.size <= 1:
        return True
    if field == "real":
        a, b = a.real, b.real
        for s in range(k.size):
            for t in range(s + 1, k.size):
                i, j = k[s], k[t]
                if np.sign(a[i] * a[j]) != np.sign(b[i] * b[j]):
                    return False
        return True
    phases_a = a[k] / np.abs(a[k])
    phases_b = b[k] / np.abs(b[k])
    theta = phases_a[0] / phases_b[0]
    return bool(np.max(np.abs(phases_a - theta * phases_b)) <= np.sqrt(eps))


def reconstruct(f: Frame, y, lifted: LiftedSystem | None = None) -> WeakSolution:
    """End-to-end reconstruction: lift, recover products, assemble.

    Pass a prebuilt LiftedSystem via `lifted` to amortize the SVD across calls.
    """
    ls = lifted if lifted is not None else build_lifted(f)
    if lifted is not None and lifted.frame is not f:
        raise ValueError("lifted system was built for a different frame")
    pe = recover_products(ls, y)
    solution = assemble(pe, tol=f.tol)
    if solution.kind is SolutionKind.FULL:
        # a zero least-squares residual only certifies a symmetric-matrix
        # solution; a Full claim additionally needs the rank-one realization
        y_arr = check_measurements(y, f.n)
        gap = np.linalg.norm(measure(f, solution.representative) - y_arr)
        if gap > f.tol.eps_residual * (1.0 + np.linalg.norm(y_arr)):
            raise InconsistentMeasurements(
                f"measurements are not realizable by any signal (forward gap {gap:.3e})",
                residual=float(gap),
            )
    return solution
