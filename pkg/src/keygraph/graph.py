"""Similarity path graphs over frame feature sequences.

A video is modeled as a path graph: one node per sampled frame, one edge
between consecutive frames.  The edge weight w in [0, 1] encodes how similar
the two frames look in feature space, computed from a scale-aware distance
between their feature vectors.  Downstream modules consume two Laplacian
views of such graphs:

* the combinatorial Laplacian L = D - W of a path (tridiagonal), used by the
  sampler and the reconstruction solver, and
* the generalized Laplacian of an arbitrary nonnegative graph with optional
  self-loops, defined as D - W + diag(W) where the degree matrix D counts the
  self-loop once.  Its Gershgorin row left-end equals the self-loop weight,
  which is what makes partition arguments on it exact.

All functions here are pure and operate on immutable value objects, so they
are safe to call concurrently.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PathGraph",
    "TridiagonalLaplacian",
    "GeneralGraph",
    "validate_features",
    "feature_distance",
    "build_spg",
    "path_laplacian",
    "generalized_laplacian",
    "partition_induced",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def validate_features(X) -> np.ndarray:
    """Validate and return a feature matrix as a float64 array.

    Requirements: two-dimensional, at least one row and one column, every
    entry finite, every row with strictly positive Euclidean norm.  Raises
    ValueError naming the first offending row otherwise.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {X.shape}")
    n, k = X.shape
    if n < 1 or k < 1:
        raise ValueError(f"feature matrix must be at least 1x1, got {n}x{k}")
    if not np.all(np.isfinite(X)):
        bad = int(np.argwhere(~np.isfinite(X).all(axis=1))[0, 0])
        raise ValueError(f"feature row {bad} contains non-finite entries")
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0.0):
        bad = int(np.argmin(norms))
        raise ValueError(f"feature row {bad} has zero norm")
    return X


@dataclass(frozen=True)
class PathGraph:
    """A path of ``n`` nodes with edge weights ``weights[i]`` on edge (i, i+1).

    Weights live in [0, 1]; a weight of 0 disconnects the two nodes for every
    purpose downstream (coverage, reconstruction, certificates).
    """

    n: int
    weights: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"a path needs at least one node, got n={self.n}")
        w = _readonly(self.weights)
        if w.ndim != 1 or w.shape[0] != self.n - 1:
            raise ValueError(
                f"expected {self.n - 1} edge weights for n={self.n}, got shape {w.shape}"
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("edge weights must be finite")
        if w.size and (w.min() < 0.0 or w.max() > 1.0):
            raise ValueError("edge weights must lie in [0, 1]")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class TridiagonalLaplacian:
    """Symmetric tridiagonal combinatorial Laplacian of a path segment.

    ``diag[i]`` is the degree of node i within the segment and ``offdiag[i]``
    equals minus the weight of edge (i, i+1).  Row sums are zero.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self) -> None:
        d = _readonly(self.diag)
        e = _readonly(self.offdiag)
        if d.ndim != 1 or e.ndim != 1 or e.shape[0] != max(d.shape[0] - 1, 0):
            raise ValueError(
                f"inconsistent shapes: diag {d.shape}, offdiag {e.shape}"
            )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("Laplacian entries must be finite")
        if e.size and e.max() > 0.0:
            raise ValueError("off-diagonal entries of a Laplacian must be <= 0")
        rowsum = d.copy()
        if e.size:
            rowsum[:-1] += e
            rowsum[1:] += e
        if rowsum.size and np.max(np.abs(rowsum)) > 1e-9:
            raise ValueError("row sums of a combinatorial Laplacian must be zero")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def to_dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        idx = np.arange(self.n - 1)
        out[idx, idx + 1] = self.offdiag
        out[idx + 1, idx] = self.offdiag
        return out


@dataclass(frozen=True)
class GeneralGraph:
    """An undirected graph given by a symmetric nonnegative adjacency matrix.

    Diagonal entries are self-loop weights (zero meaning no loop).
    """

    adjacency: np.ndarray

    def __post_init__(self) -> None:
        W = _readonly(self.adjacency)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise ValueError("adjacency entries must be finite")
        if W.size and W.min() < 0.0:
            raise ValueError("adjacency entries must be nonnegative")
        if not np.allclose(W, W.T, rtol=0.0, atol=1e-12):
            raise ValueError("adjacency must be symmetric")
        object.__setattr__(self, "adjacency", W)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @classmethod
    def from_path(cls, graph: PathGraph) -> "GeneralGraph":
        W = np.zeros((graph.n, graph.n))
        idx = np.arange(graph.n - 1)
        W[idx, idx + 1] = graph.weights
        W[idx + 1, idx] = graph.weights
        return cls(W)


def feature_distance(f, g) -> float:
    """Scale-aware distance between two feature vectors.

    With cos(theta) = <f, g> / (|f| |g|), the distance is

        delta = (|f - cos(theta) g| + |g - cos(theta) f|) / (|f| + |g|),

    which is symmetric, lies in [0, 2], and vanishes when the vectors are
    positive scalings of each other.  Zero-norm inputs are rejected.
    """
    f = np.asarray(f, dtype=float).ravel()
    g = np.asarray(g, dtype=float).ravel()
    if f.shape != g.shape:
        raise ValueError(f"vectors must share a shape, got {f.shape} and {g.shape}")
    nf = float(np.linalg.norm(f))
    ng = float(np.linalg.norm(g))
    if nf == 0.0 or ng == 0.0:
        raise ValueError("feature_distance requires vectors with positive norm")
    cos = float(f @ g) / (nf * ng)
    return float(
        (np.linalg.norm(f - cos * g) + np.linalg.norm(g - cos * f)) / (nf + ng)
    )


def build_spg(features) -> PathGraph:
    """Build the similarity path graph of a feature sequence.

    Edge (i, i+1) gets weight clamp(1 - delta(f_i, f_{i+1}), 0, 1).  The
    computation is vectorized over all consecutive pairs, O(N K) total.
    """
    X = validate_features(features)
    n = X.shape[0]
    if n == 1:
        return PathGraph(1, np.empty(0))
    norms = np.linalg.norm(X, axis=1)
    head, tail = X[:-1], X[1:]
    cos = np.einsum("ij,ij->i", head, tail) / (norms[:-1] * norms[1:])
    left = np.linalg.norm(head - cos[:, None] * tail, axis=1)
    right = np.linalg.norm(tail - cos[:, None] * head, axis=1)
    delta = (left + right) / (norms[:-1] + norms[1:])
    return PathGraph(n, np.clip(1.0 - delta, 0.0, 1.0))


def path_laplacian(graph: PathGraph) -> TridiagonalLaplacian:
    """Combinatorial Laplacian L = D - W of a path graph."""
    w = graph.weights
    diag = np.zeros(graph.n)
    if w.size:
        diag[:-1] += w
        diag[1:] += w
    return TridiagonalLaplacian(diag, -w)


def generalized_laplacian(graph: GeneralGraph) -> np.ndarray:
    """Generalized Laplacian D - W + diag(W) of a graph with self-loops.

    The degree matrix counts each self-loop once, so row i has diagonal equal
    to the full row sum of W and Gershgorin left-end exactly W[i, i].
    """
    W = graph.adjacency
    out = -W.copy()
    np.fill_diagonal(out, W.sum(axis=1))
    return out


def partition_induced(graph: GeneralGraph, blocks) -> list[GeneralGraph]:
    """Induced sub-graphs of a node partition, with cut edges dropped.

    Each block keeps its internal edges and self-loops; edges between blocks
    disappear entirely, including their degree contribution.  ``blocks`` must
    be disjoint, nonempty, and cover every node.
    """
    n = graph.n
    seen = np.zeros(n, dtype=bool)
    cleaned: list[np.ndarray] = []
    for b, block in enumerate(blocks):
        idx = np.asarray(sorted(int(i) for i in block), dtype=int)
        if idx.size == 0:
            raise ValueError(f"block {b} is empty")
        if idx.min() < 0 or idx.max() >= n:
            raise ValueError(f"block {b} references nodes outside 0..{n - 1}")
        if np.any(seen[idx]):
            raise ValueError(f"block {b} overlaps an earlier block")
        seen[idx] = True
        cleaned.append(idx)
    if not np.all(seen):
        missing = int(np.argmin(seen))
        raise ValueError(f"node {missing} is not covered by any block")
    return [GeneralGraph(graph.adjacency[np.ix_(idx, idx)]) for idx in cleaned]
