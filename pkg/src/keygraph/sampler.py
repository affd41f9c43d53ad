"""Keyframe sampling on a path graph by Gershgorin disc alignment.

Selecting a sample node k of a path segment shifts its Gershgorin disc right
by one (the coefficient matrix is diag(a) + mu * L).  A diagonal similarity
transform diag(s) B diag(s)^-1 preserves eigenvalues while letting each node
trade disc radius against its neighbors: shrinking s_i pulls node i's own
left-end up and pushes its neighbors' radii up.  The cascade below exploits
that one node at a time.

Starting from the sample, each disc in turn is tested against a threshold T:
its center is mu times its degree inside the segment, its radius combines the
edge toward the already-aligned neighbor (divided by that neighbor's scalar,
which is > 1, so the term shrinks) with the untouched edge on the far side.
A disc that clears T is aligned exactly at T by its own scalar and the wave
moves on.  Walking left from the sample must reach the segment start, or the
sample is infeasible; walking right, the index d of the last disc to clear T
is the sample's coverage.  Every node in 0..d then has a certified disc
left-end of at least T, so the segment's coefficient matrix has
lambda_min >= T.

Greedy selection scans candidate samples from the left end of the remaining
segment, keeps the one with the largest coverage, cuts the covered prefix off
as a finished sub-graph, and repeats.  A budget variant binary-searches T:
lower thresholds widen coverage and reduce the sample count, so the search
finds the largest threshold whose sample count fits the budget.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .graph import PathGraph, TridiagonalLaplacian

__all__ = [
    "SamplerParams",
    "CoverageResult",
    "SelectionResult",
    "align_scalar",
    "disc_align_coverage",
    "choose_sample",
    "partition_sample",
    "budgeted_sample",
]


@dataclass(frozen=True)
class SamplerParams:
    """Sampling knobs.

    mu:       smoothness weight of the coefficient matrix, > 0.
    T:        disc alignment threshold, in (0, 1).
    epsilon:  binary-search precision for the budget mode, > 0.
    tol:      comparison slack for the disc clearing test; 0 keeps the
              arithmetic strict.
    """

    mu: float
    T: float
    epsilon: float = 1e-7
    tol: float = 0.0

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mu) and self.mu > 0.0):
            raise ValueError(f"mu must be positive and finite, got {self.mu}")
        if not (np.isfinite(self.T) and 0.0 < self.T < 1.0):
            raise ValueError(f"T must lie strictly inside (0, 1), got {self.T}")
        if not (np.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not (np.isfinite(self.tol) and self.tol >= 0.0):
            raise ValueError(f"tol must be nonnegative, got {self.tol}")


@dataclass(frozen=True)
class CoverageResult:
    """Outcome of one disc-alignment cascade.

    feasible: whether the leftward wave cleared every disc down to node 0.
    d:        0-based local index of the last covered node (None if
              infeasible); the sample certifies nodes 0..d.
    depth:    steps taken from the sample in the longer cascade direction,
              counting a failed rightward probe; a locality diagnostic.
    scalars:  alignment scalars for nodes 0..d (None if infeasible).
    """

    feasible: bool
    d: int | None
    depth: int
    scalars: np.ndarray | None

    @property
    def covered(self) -> int:
        """Number of covered nodes."""
        return 0 if self.d is None else self.d + 1


@dataclass(frozen=True)
class SelectionResult:
    """A complete sampling of a path graph.

    samples:   one selected node per sub-graph, ascending global indices.
    subgraphs: inclusive (lo, hi) node ranges partitioning 0..n-1, in order.
    a:         binary selection vector over all n nodes.
    T_used:    threshold that produced the partition (None when a budget of
               C >= n made the search unnecessary).
    budget_infeasible: True when a budget run could not meet the budget at
               any probed threshold and returned its sparsest selection.
    """

    samples: np.ndarray
    subgraphs: tuple[tuple[int, int], ...]
    a: np.ndarray
    T_used: float | None
    budget_infeasible: bool = False

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=int)
        a = np.asarray(self.a, dtype=int)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "a", a)
        n = a.shape[0]
        if len(self.subgraphs) != samples.shape[0]:
            raise ValueError("need exactly one sample per sub-graph")
        prev_end = -1
        for (lo, hi), k in zip(self.subgraphs, samples):
            if lo != prev_end + 1 or hi < lo:
                raise ValueError(f"sub-graph ranges must tile 0..{n - 1} in order")
            if not lo <= k <= hi:
                raise ValueError(f"sample {k} falls outside its range ({lo}, {hi})")
            prev_end = hi
        if prev_end != n - 1:
            raise ValueError(f"sub-graph ranges must cover all {n} nodes")
        if not np.array_equal(np.flatnonzero(a), samples):
            raise ValueError("selection vector disagrees with the sample list")

    @property
    def count(self) -> int:
        """Number of selected nodes."""
        return self.samples.shape[0]


def align_scalar(c: float, r: float, T: float) -> float:
    """Scalar that places a disc's left-end exactly at T.

    For center c and radius r the transformed left-end is c - s * r, so
    s = (c - T) / r; a zero radius means the disc already sits at c >= T and
    keeps scalar 1.  A center at or below T with positive radius cannot be
    aligned and raises.
    """
    if r < 0.0:
        raise ValueError(f"disc radius must be nonnegative, got {r}")
    if r == 0.0:
        return 1.0
    if c <= T:
        raise ValueError(
            f"cannot align a disc with center {c} at or below the threshold {T}"
        )
    return (c - T) / r


def _cascade(
    w: list, lo: int, hi: int, k: int, mu: float, T: float, tol: float
) -> tuple[bool, int | None, int, list | None]:
    """Disc-alignment cascade on window [lo, hi] of a weight list.

    Global node indices; edge i joins nodes i and i+1, and only edges with
    lo <= i < hi belong to the window.  Returns (feasible, d, depth, scalars)
    with d global and scalars ordered for nodes lo..d.
    """
    bar = T - tol
    wl = w[k - 1] if k > lo else 0.0
    wr = w[k] if k < hi else 0.0
    r = mu * (wl + wr)
    s_k = (1.0 + r - T) / r if r > 0.0 else 1.0

    left: list = []
    s_next = s_k
    i = k - 1
    while i >= lo:
        w_in = w[i - 1] if i > lo else 0.0
        c = mu * (w_in + w[i])
        rad = mu * w[i] / s_next + mu * w_in
        if not (c - rad >= bar and (rad == 0.0 or c > T)):
            return False, None, max(k - i, 0), None
        s_next = (c - T) / rad if rad > 0.0 else 1.0
        left.append(s_next)
        i -= 1
    left.reverse()

    right: list = []
    s_prev = s_k
    d = hi
    probes = 0
    j = k + 1
    while j <= hi:
        probes += 1
        w_out = w[j] if j < hi else 0.0
        c = mu * (w[j - 1] + w_out)
        rad = mu * w[j - 1] / s_prev + mu * w_out
        if not (c - rad >= bar and (rad == 0.0 or c > T)):
            d = j - 1
            break
        s_prev = (c - T) / rad if rad > 0.0 else 1.0
        right.append(s_prev)
        j += 1

    depth = max(k - lo, probes)
    return True, d, depth, left + [s_k] + right


def _choose(
    w: list, lo: int, hi: int, mu: float, T: float, tol: float
) -> tuple[int, int, int, list]:
    """Best sample for window [lo, hi]: the feasible k with the largest
    coverage, scanning k upward and stopping at the first infeasible one.
    Ties keep the smallest k.  Returns (k, d, depth, scalars), all global.
    """
    best_k = lo
    _, best_d, best_depth, best_scal = _cascade(w, lo, hi, lo, mu, T, tol)
    k = lo + 1
    while best_d < hi and k <= hi:
        feasible, d, depth, scal = _cascade(w, lo, hi, k, mu, T, tol)
        if not feasible:
            break
        if d > best_d:
            best_k, best_d, best_depth, best_scal = k, d, depth, scal
        k += 1
    return best_k, best_d, best_depth, best_scal


def _segment_weights(L: TridiagonalLaplacian) -> list:
    return (-L.offdiag).tolist()


def disc_align_coverage(L: TridiagonalLaplacian, k: int, params: SamplerParams) -> CoverageResult:
    """Run the cascade for sample k on a segment Laplacian.

    The segment is taken as its own graph: degrees at the boundary exclude
    any edges that were cut when the segment was carved out.  The leftward
    wave (toward node 0) must clear every disc for k to be feasible; the
    rightward wave stops at the first disc that cannot clear T and reports
    the last one that could.
    """
    n = L.n
    if not 0 <= k < n:
        raise ValueError(f"sample index {k} outside 0..{n - 1}")
    feasible, d, depth, scal = _cascade(
        _segment_weights(L), 0, n - 1, k, params.mu, params.T, params.tol
    )
    scalars = np.asarray(scal) if scal is not None else None
    return CoverageResult(feasible, d, depth, scalars)


def choose_sample(L: TridiagonalLaplacian, params: SamplerParams) -> tuple[int, CoverageResult]:
    """Best sample node for one segment, with its coverage.

    Candidates are scanned from node 0 upward; the scan ends at the first
    candidate whose leftward wave fails, since moving the sample further
    right only weakens left coverage.  Node 0 is always feasible, so a
    result always exists.
    """
    if L.n < 1:
        raise ValueError("segment must contain at least one node")
    k, d, depth, scal = _choose(
        _segment_weights(L), 0, L.n - 1, params.mu, params.T, params.tol
    )
    return k, CoverageResult(True, d, depth, np.asarray(scal))


def partition_sample(G: PathGraph, params: SamplerParams) -> SelectionResult:
    """Partition a path into certified sub-graphs, one sample each.

    Repeatedly picks the best sample for the remaining suffix, cuts the
    covered prefix off as a sub-graph, and continues after it.  Every
    sub-graph's coefficient matrix diag(e_k) + mu * L_segment then satisfies
    lambda_min >= T, and since each cut edge only adds a positive
    semidefinite Laplacian term, the full-graph coefficient matrix
    diag(a) + mu * L does too.
    """
    w = G.weights.tolist()
    n = G.n
    mu, T, tol = params.mu, params.T, params.tol
    samples: list[int] = []
    spans: list[tuple[int, int]] = []
    lo = 0
    while lo < n:
        k, d, _, _ = _choose(w, lo, n - 1, mu, T, tol)
        samples.append(k)
        spans.append((lo, d))
        lo = d + 1
    a = np.zeros(n, dtype=int)
    a[samples] = 1
    return SelectionResult(np.asarray(samples), tuple(spans), a, params.T, False)


def budgeted_sample(
    G: PathGraph, C: int, mu: float = 0.01, epsilon: float = 1e-7
) -> SelectionResult:
    """Select at most C keyframes by binary search on the threshold.

    The sample count of :func:`partition_sample` is non-decreasing in T, so
    the search keeps the largest threshold whose count fits the budget and
    reports that selection.  When no probed threshold fits (possible only
    when coverage saturates, for instance across zero-weight edges), the
    sparsest selection seen is returned with ``budget_infeasible`` set; among
    equally sparse ones the highest threshold wins.  A budget of C >= n skips
    the search and selects every node.
    """
    if isinstance(C, bool) or not isinstance(C, (int, np.integer)):
        raise ValueError(f"budget must be an integer, got {C!r}")
    if C < 1:
        raise ValueError(f"budget must be at least 1, got {C}")
    if not (np.isfinite(mu) and mu > 0.0):
        raise ValueError(f"mu must be positive and finite, got {mu}")
    if not (np.isfinite(epsilon) and 0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    n = G.n
    if C >= n:
        return SelectionResult(
            np.arange(n),
            tuple((i, i) for i in range(n)),
            np.ones(n, dtype=int),
            None,
            False,
        )

    best_fit: SelectionResult | None = None
    best_over: SelectionResult | None = None
    lo, hi = 0.0, 1.0
    while hi - lo > epsilon:
        mid = 0.5 * (lo + hi)
        probe = partition_sample(G, SamplerParams(mu, mid, epsilon))
        if probe.count > C:
            if (
                best_over is None
                or probe.count < best_over.count
                or (probe.count == best_over.count and mid > best_over.T_used)
            ):
                best_over = probe
            hi = mid
        else:
            if (
                best_fit is None
                or probe.count > best_fit.count
                or (probe.count == best_fit.count and mid > best_fit.T_used)
            ):
                best_fit = probe
            lo = mid
    if best_fit is not None:
        return best_fit
    return dataclasses.replace(best_over, budget_infeasible=True)
