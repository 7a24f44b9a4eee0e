"""Small dense linear-algebra kernels.

The symmetric eigensolver and the pivoted rank are written out longhand on
purpose: they are the two primitives every certification decision rests on,
so they stay dependency-free and easy to audit.  Everything else (SVD,
least squares) is delegated to numpy.
"""
from __future__ import annotations

import numpy as np


def jacobi_eigh(A: np.ndarray, max_sweeps: int = 60, rel_tol: float = 1e-13):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (w, V) with eigenvalues w ascending and V[:, k] the unit
    eigenvector for w[k].  Converges quadratically; `rel_tol` bounds the
    off-diagonal Frobenius mass relative to the matrix norm.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * (1.0 + np.abs(A).max(initial=0.0))):
        raise ValueError("matrix is not symmetric")
    m = A.shape[0]
    B = 0.5 * (A + A.T)
    V = np.eye(m)
    if m == 1:
        return B.diagonal().copy(), V

    norm = np.linalg.norm(B)
    if norm == 0.0:
        return np.zeros(m), V

    # measure the off-diagonal mass directly: the subtraction trick
    # norm(B)^2 - norm(diag)^2 cancels catastrophically once B is nearly
    # diagonal and floors out at norm * sqrt(eps), far above rel_tol
    off_diag = ~np.eye(m, dtype=bool)
    for _ in range(max_sweeps):
        off = np.linalg.norm(B[off_diag])
        if off <= rel_tol * norm:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = B[p, q]
                if abs(apq) <= rel_tol * norm / m:
                    continue
                # classic 2x2 rotation: zero out B[p, q]
                tau = (B[q, q] - B[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot_p = c * B[:, p] - s * B[:, q]
                rot_q = s * B[:, p] + c * B[:, q]
                B[:, p], B[:, q] = rot_p, rot_q
                rot_p = c * B[p, :] - s * B[q, :]
                rot_q = s * B[p, :] + c * B[q, :]
                B[p, :], B[q, :] = rot_p, rot_q
                B[p, q] = B[q, p] = 0.0
                rot_p = c * V[:, p] - s * V[:, q]
                rot_q = s * V[:, p] + c * V[:, q]
                V[:, p], V[:, q] = rot_p, rot_q
    else:
        raise RuntimeError("Jacobi iteration failed to converge")

    w = B.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def pivoted_rank(A: np.ndarray, eps_rank: float = 1e-9) -> int:
    """Numerical rank by Gaussian elimination with complete pivoting.

    A pivot counts while its magnitude exceeds eps_rank times the largest
    entry of the original matrix, so the decision is scale-free.
    """
    B = np.array(A, dtype=float, copy=True)
    if B.ndim == 1:
        B = B.reshape(1, -1)
    if B.size == 0:
        return 0
    scale = np.abs(B).max()
    if scale == 0.0:
        return 0
    threshold = eps_rank * scale
    n, m = B.shape
    rank = 0
    for _ in range(min(n, m)):
        sub = np.abs(B[rank:, rank:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= threshold:
            break
        i += rank
        j += rank
        B[[rank, i], :] = B[[i, rank], :]
        B[:, [rank, j]] = B[:, [j, rank]]
        pivot = B[rank, rank]
        B[rank + 1:, :] -= np.outer(B[rank + 1:, rank] / pivot, B[rank, :])
        rank += 1
    return rank


def orthonormal_complement(rows: np.ndarray, eps_rank: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the null space {x : rows @ x = 0}."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    m = rows.shape[1]
    _, s, vt = np.linalg.svd(rows, full_matrices=True)
    cutoff = eps_rank * (s[0] if s.size else 0.0)
    r = int(np.sum(s > cutoff))
    return vt[r:].T.reshape(m, m - r)


def orthonormal_rowspan(rows: np.ndarray, eps_rank: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given row vectors."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    cutoff = eps_rank * (s[0] if s.size else 0.0)
    r = int(np.sum(s > cutoff))
    return vt[:r].T
