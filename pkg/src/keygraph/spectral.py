"""Gershgorin bounds and self-contained smallest-eigenvalue oracles.

The sampler's guarantees are phrased through Gershgorin disc left-ends of
(similarity-transformed) matrices.  This module provides those bounds plus
two independent eigenvalue oracles used only for verification: a Sturm
sequence bisection for symmetric tridiagonal matrices and a cyclic Jacobi
iteration for small dense symmetric matrices.  Neither depends on an external
eigensolver, so verification runs are reproducible bit for bit.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import TridiagonalLaplacian, _readonly

__all__ = [
    "CoefficientMatrix",
    "selection_to_sampling_matrix",
    "coefficient_matrix",
    "gershgorin_left_ends",
    "gct_lower_bound",
    "scaled_gct_lower_bound",
    "lambda_min_tridiagonal",
    "lambda_min_dense",
]

DENSE_ORACLE_MAX_N = 64


@dataclass(frozen=True)
class CoefficientMatrix:
    """Symmetric tridiagonal B = diag(a) + mu * L for a path Laplacian L."""

    diag: np.ndarray
    offdiag: np.ndarray
    a: np.ndarray = field(default_factory=lambda: np.empty(0))
    mu: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "diag", _readonly(self.diag))
        object.__setattr__(self, "offdiag", _readonly(self.offdiag))
        object.__setattr__(self, "a", _readonly(self.a))

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def to_dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        idx = np.arange(self.n - 1)
        out[idx, idx + 1] = self.offdiag
        out[idx + 1, idx] = self.offdiag
        return out


def selection_to_sampling_matrix(a) -> np.ndarray:
    """Selected node indices, in order: the rows of the sampling matrix H.

    Round-trips with the selection vector through H^T H = diag(a).
    """
    a = np.asarray(a)
    if a.ndim != 1:
        raise ValueError(f"selection vector must be 1-D, got shape {a.shape}")
    if not np.all((a == 0) | (a == 1)):
        raise ValueError("selection vector must be binary")
    return np.flatnonzero(a)


def coefficient_matrix(a, mu: float, L: TridiagonalLaplacian) -> CoefficientMatrix:
    """Assemble B = diag(a) + mu * L."""
    a = np.asarray(a, dtype=float)
    if a.shape != (L.n,):
        raise ValueError(f"selection vector has shape {a.shape}, Laplacian has n={L.n}")
    if not np.all((a == 0.0) | (a == 1.0)):
        raise ValueError("selection vector must be binary")
    if not mu > 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    return CoefficientMatrix(a + mu * L.diag, mu * L.offdiag, a, float(mu))


def gershgorin_left_ends(M, s=None) -> np.ndarray:
    """Disc left-ends of M, optionally under the similarity diag(s) M diag(s)^-1.

    Row i yields M[i, i] - sum_{j != i} |M[i, j]| * s_i / s_j; with s omitted
    all scalars are 1.  The minimum over rows lower-bounds every eigenvalue.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"matrix must be square, got shape {M.shape}")
    A = np.abs(M)
    if s is not None:
        s = np.asarray(s, dtype=float)
        if s.shape != (M.shape[0],):
            raise ValueError(f"scaling vector has shape {s.shape}, matrix has n={M.shape[0]}")
        if not np.all(np.isfinite(s)) or np.any(s <= 0.0):
            raise ValueError("scaling entries must be positive and finite")
        A = A * (s[:, None] / s[None, :])
    radii = A.sum(axis=1) - np.diag(A)
    return np.diag(M) - radii


def gct_lower_bound(M) -> float:
    """Smallest Gershgorin disc left-end of a symmetric matrix."""
    return float(gershgorin_left_ends(M).min())


def scaled_gct_lower_bound(M, s) -> float:
    """Smallest disc left-end of diag(s) M diag(s)^-1; still <= lambda_min(M)."""
    return float(gershgorin_left_ends(M, s).min())


def _sturm_negative_pivots(diag: list, off2: list, x: float) -> int:
    """Number of eigenvalues strictly below x, by the LDL^T pivot signs."""
    tiny = np.finfo(float).tiny
    count = 0
    d = diag[0] - x
    if d == 0.0:
        d = -tiny
    if d < 0.0:
        count += 1
    for i in range(1, len(diag)):
        d = (diag[i] - x) - off2[i - 1] / d
        if d == 0.0:
            d = -tiny
        if d < 0.0:
            count += 1
    return count


def lambda_min_tridiagonal(matrix, tol: float = 1e-10) -> float:
    """Smallest eigenvalue of a symmetric tridiagonal matrix, within +-tol.

    Bisects the Gershgorin enclosure with a Sturm sequence count.  ``matrix``
    is anything exposing ``diag`` and ``offdiag`` arrays (a path Laplacian or
    a coefficient matrix).
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    diag = np.asarray(matrix.diag, dtype=float)
    off = np.asarray(matrix.offdiag, dtype=float)
    n = diag.shape[0]
    if n == 1:
        return float(diag[0])
    radii = np.zeros(n)
    radii[:-1] += np.abs(off)
    radii[1:] += np.abs(off)
    lo = float(np.min(diag - radii))
    hi = float(np.max(diag + radii))
    if lo == hi:
        return lo
    d_list = diag.tolist()
    off2 = (off * off).tolist()
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _sturm_negative_pivots(d_list, off2, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def lambda_min_dense(M, tol: float = 1e-10, max_n: int = DENSE_ORACLE_MAX_N) -> float:
    """Smallest eigenvalue of a small dense symmetric matrix, within +-tol.

    Cyclic Jacobi rotations run until the off-diagonal Frobenius norm drops
    to tol; the matrix size is capped at ``max_n`` by design.
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    n = A.shape[0]
    if n > max_n:
        raise ValueError(f"dense oracle is capped at n={max_n}, got n={n}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12):
        raise ValueError("matrix must be symmetric")
    A = 0.5 * (A + A.T)
    if n == 1:
        return float(A[0, 0])

    def off_norm(B: np.ndarray) -> float:
        # summing the off-diagonal entries directly avoids the cancellation
        # that subtracting two large diagonal-heavy sums would cause
        off = B.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.sqrt(np.sum(off * off)))

    for _ in range(100):
        if off_norm(A) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(A[p, q])
                if apq == 0.0:
                    continue
                tau = (float(A[q, q]) - float(A[p, p])) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration failed to converge in 100 sweeps")
    return float(np.min(np.diag(A)))
