"""Signal reconstruction from sampled path nodes.

Observing values y on a sample set a, the smoothest consistent signal under
graph Laplacian regularization solves (diag(a) + mu L) x = H^T y, where H is
the row-selection matrix of the samples.  On a path this system is symmetric
tridiagonal, so a direct LDL^T factorization solves it exactly in O(N) with
no iteration and no randomness.  The system is positive definite exactly when
every maximal positive-weight segment of the path contains a sample; the
solver checks that up front and names the first uncovered segment otherwise.
"""

from dataclasses import dataclass

import numpy as np

from .graph import PathGraph, path_laplacian

__all__ = ["SampledSignal", "solve_glr"]

PIVOT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SampledSignal:
    """Observed values ``y`` at the nodes selected by the binary vector ``a``.

    ``y`` is ordered by node index and has exactly one entry per selected
    node.
    """

    a: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=int)
        y = np.asarray(self.y, dtype=float)
        if a.ndim != 1 or y.ndim != 1:
            raise ValueError("selection vector and observations must be 1-D")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("selection vector must be binary")
        if y.shape[0] != int(a.sum()):
            raise ValueError(
                f"got {y.shape[0]} observations for {int(a.sum())} selected nodes"
            )
        if not np.all(np.isfinite(y)):
            raise ValueError("observations must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "y", y)


def _uncovered_segment(weights: np.ndarray, a: np.ndarray) -> tuple[int, int] | None:
    """First maximal positive-weight segment containing no sample, if any."""
    n = a.shape[0]
    lo = 0
    for i in range(n):
        last = i == n - 1 or weights[i] == 0.0
        if last:
            if not np.any(a[lo : i + 1]):
                return lo, i
            lo = i + 1
    return None


def solve_glr(G: PathGraph, obs: SampledSignal, mu: float) -> np.ndarray:
    """Solve (diag(a) + mu L) x = H^T y for the full signal x.

    Factorizes the symmetric tridiagonal system as LDL^T and substitutes,
    O(N) end to end.  Raises if some connected piece of the path has no
    sample (the system is singular there) or if a pivot falls below
    ``PIVOT_THRESHOLD`` in magnitude.
    """
    if not (np.isfinite(mu) and mu > 0.0):
        raise ValueError(f"mu must be positive and finite, got {mu}")
    a = obs.a
    if a.shape[0] != G.n:
        raise ValueError(f"selection vector has {a.shape[0]} entries for {G.n} nodes")
    gap = _uncovered_segment(G.weights, a)
    if gap is not None:
        lo, hi = gap
        raise ValueError(
            f"nodes {lo}..{hi} form a connected segment with no sample; "
            "the system is singular there"
        )
    L = path_laplacian(G)
    diag = a + mu * L.diag
    off = mu * L.offdiag
    n = G.n

    rhs = np.zeros(n)
    rhs[np.flatnonzero(a)] = obs.y

    # LDL^T factorization: d holds pivots, l the unit subdiagonal.
    d = np.empty(n)
    l = np.empty(max(n - 1, 0))
    d[0] = diag[0]
    for i in range(1, n):
        if abs(d[i - 1]) <= PIVOT_THRESHOLD:
            raise ValueError(
                f"coefficient matrix is numerically singular (pivot {d[i - 1]:.3e} "
                f"at node {i - 1})"
            )
        l[i - 1] = off[i - 1] / d[i - 1]
        d[i] = diag[i] - l[i - 1] * off[i - 1]
    if abs(d[n - 1]) <= PIVOT_THRESHOLD:
        raise ValueError(
            f"coefficient matrix is numerically singular (pivot {d[n - 1]:.3e} "
            f"at node {n - 1})"
        )

    x = rhs.copy()
    for i in range(1, n):
        x[i] -= l[i - 1] * x[i - 1]
    x /= d
    for i in range(n - 2, -1, -1):
        x[i] -= l[i] * x[i + 1]
    return x
