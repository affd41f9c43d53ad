"""Randomized property suites for the sampling pipeline.

Each suite checks one mathematical claim of the toolkit on seeded random
instances and reports the first counterexample it finds, fully instantiated,
so a failure is immediately reproducible.  The suites are deterministic for a
fixed seed.  A test-only fault hook can corrupt the certificate check's
scalars to demonstrate that violations actually get caught and printed.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .graph import (
    GeneralGraph,
    PathGraph,
    generalized_laplacian,
    partition_induced,
    path_laplacian,
)
from .sampler import SamplerParams, disc_align_coverage, partition_sample, budgeted_sample
from .spectral import (
    coefficient_matrix,
    gershgorin_left_ends,
    gct_lower_bound,
    lambda_min_dense,
    lambda_min_tridiagonal,
    scaled_gct_lower_bound,
)

__all__ = ["VerifyConfig", "SuiteResult", "run_all", "SUITES"]


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs for the verification run."""

    trials: int = 500
    seed: int = 0
    max_nodes: int = 32
    fault: str | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.max_nodes < 2:
            raise ValueError(f"max_nodes must be >= 2, got {self.max_nodes}")
        if self.fault not in (None, "scale-radius"):
            raise ValueError(f"unknown fault {self.fault!r}")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failure: str | None
    note: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def _random_path(rng: np.random.Generator, max_nodes: int) -> PathGraph:
    n = int(rng.integers(2, max_nodes + 1))
    weights = 1.0 - rng.random(n - 1)  # U(0, 1]
    return PathGraph(n, weights)


MUS = (0.01, 0.1, 1.0)
THRESHOLDS = (0.05, 0.1, 0.3)


def check_bound_soundness(cfg: VerifyConfig, rng: np.random.Generator) -> SuiteResult:
    """Gershgorin bounds, scaled or not, never exceed the true lambda_min."""
    checks = 0
    for t in range(cfg.trials):
        G = _random_path(rng, cfg.max_nodes)
        mu = MUS[t % len(MUS)]
        a = (rng.random(G.n) < 0.5).astype(float)
        B = coefficient_matrix(a, mu, path_laplacian(G))
        dense = B.to_dense()
        lam = lambda_min_tridiagonal(B)
        s = np.exp(rng.uniform(-2.0, 2.0, G.n))
        for bound in (gct_lower_bound(dense), scaled_gct_lower_bound(dense, s)):
            checks += 1
            if bound > lam + 1e-8:
                return SuiteResult(
                    "bound-soundness",
                    checks,
                    f"bound {bound!r} exceeds lambda_min {lam!r}\n"
                    f"  weights={G.weights.tolist()}\n  a={a.tolist()}\n"
                    f"  mu={mu}\n  s={s.tolist()}",
                )
    return SuiteResult("bound-soundness", checks, None)


def _random_general_graph(rng: np.random.Generator, max_nodes: int = 12) -> GeneralGraph:
    n = int(rng.integers(2, max_nodes + 1))
    dense = rng.random((n, n))
    mask = rng.random((n, n)) < 0.6
    W = np.triu(dense * mask, 1)
    W = W + W.T
    loops = np.where(rng.random(n) < 0.7, rng.random(n), 0.0)
    W[np.diag_indices(n)] = loops
    return GeneralGraph(W)


def _random_partition(rng: np.random.Generator, n: int) -> list[list[int]]:
    order = rng.permutation(n)
    q = int(rng.integers(1, n + 1))
    cuts = sorted(rng.choice(np.arange(1, n), size=min(q - 1, n - 1), replace=False).tolist())
    blocks = []
    prev = 0
    for cut in cuts + [n]:
        blocks.append(order[prev:cut].tolist())
        prev = cut
    return blocks


def check_left_end_preservation(cfg: VerifyConfig, rng: np.random.Generator) -> SuiteResult:
    """Partitioning preserves the smallest generalized-Laplacian disc left-end.

    Every node's left-end equals its self-loop weight both in the full graph
    and in its block, so the minimum over blocks equals the full bound
    exactly, and both stay below the true lambda_min.
    """
    checks = 0
    for _ in range(cfg.trials):
        G = _random_general_graph(rng)
        blocks = _random_partition(rng, G.n)
        full = gct_lower_bound(generalized_laplacian(G))
        parts = [
            gct_lower_bound(generalized_laplacian(sub))
            for sub in partition_induced(G, blocks)
        ]
        lam = lambda_min_dense(generalized_laplacian(G))
        checks += 1
        if abs(min(parts) - full) > 1e-12 or full > lam + 1e-8:
            return SuiteResult(
                "left-end-preservation",
                checks,
                f"min over blocks {min(parts)!r} vs full bound {full!r} "
                f"(lambda_min {lam!r})\n  W={G.adjacency.tolist()}\n  blocks={blocks}",
            )
    return SuiteResult("left-end-preservation", checks, None)


def check_partition_certificate(cfg: VerifyConfig, rng: np.random.Generator) -> SuiteResult:
    """partition_sample's selections certify lambda_min >= T on the full graph.

    Re-derives every block's scalars and checks each disc left-end of the
    scaled block matrix against T, then checks the full coefficient matrix
    against the tridiagonal oracle.  The scale-radius fault hook corrupts one
    scalar per block to demonstrate counterexample reporting.
    """
    checks = 0
    fixtures = [(PathGraph(4, np.full(3, 0.5)), 1.0, 0.1)]
    for t in range(cfg.trials):
        if t < len(fixtures):
            G, mu, T = fixtures[t]
        else:
            G = _random_path(rng, cfg.max_nodes)
            mu = MUS[t % len(MUS)]
            T = THRESHOLDS[t % len(THRESHOLDS)]
        params = SamplerParams(mu, T)
        result = partition_sample(G, params)
        for (lo, hi), k in zip(result.subgraphs, result.samples):
            seg = PathGraph(hi - lo + 1, G.weights[lo:hi])
            L = path_laplacian(seg)
            cov = disc_align_coverage(L, k - lo, params)
            scalars = cov.scalars.copy()
            if cfg.fault == "scale-radius":
                scalars[0] *= 0.5
            e_k = np.zeros(seg.n)
            e_k[k - lo] = 1.0
            B = coefficient_matrix(e_k, mu, L)
            ends = gershgorin_left_ends(B.to_dense(), scalars)
            checks += 1
            if not (cov.feasible and cov.d == seg.n - 1):
                return SuiteResult(
                    "partition-certificate",
                    checks,
                    f"block ({lo}, {hi}) does not re-cover itself from sample {k}\n"
                    f"  weights={G.weights.tolist()}\n  mu={mu} T={T}",
                )
            if ends.min() < T - 1e-9:
                return SuiteResult(
                    "partition-certificate",
                    checks,
                    f"scaled disc left-end {float(ends.min())!r} below T={T} "
                    f"in block ({lo}, {hi})\n"
                    f"  weights={G.weights.tolist()}\n  mu={mu}\n"
                    f"  sample={k}\n  scalars={scalars.tolist()}",
                )
        B_full = coefficient_matrix(result.a.astype(float), mu, path_laplacian(G))
        lam = lambda_min_tridiagonal(B_full)
        checks += 1
        if lam < T - 1e-8:
            return SuiteResult(
                "partition-certificate",
                checks,
                f"lambda_min {lam!r} below T={T}\n"
                f"  weights={G.weights.tolist()}\n  mu={mu}\n"
                f"  samples={result.samples.tolist()}",
            )
    return SuiteResult("partition-certificate", checks, None)


def check_monotonicity(cfg: VerifyConfig, rng: np.random.Generator) -> SuiteResult:
    """Coverage shrinks and sample count grows as T rises."""
    grid = np.linspace(0.01, 0.9, 20)
    checks = 0
    for t in range(cfg.trials):
        G = _random_path(rng, cfg.max_nodes)
        mu = MUS[t % len(MUS)]
        L = path_laplacian(G)
        prev_d = None
        prev_count = None
        for T in grid:
            params = SamplerParams(mu, float(T))
            cov = disc_align_coverage(L, 0, params)
            count = partition_sample(G, params).count
            checks += 1
            if prev_d is not None and (cov.d > prev_d or count < prev_count):
                return SuiteResult(
                    "monotonicity",
                    checks,
                    f"raising T to {T} moved coverage from {prev_d} to {cov.d} "
                    f"and count from {prev_count} to {count}\n"
                    f"  weights={G.weights.tolist()}\n  mu={mu}",
                )
            prev_d, prev_count = cov.d, count
    return SuiteResult("monotonicity", checks, None)


def check_budget_bruteforce(cfg: VerifyConfig, rng: np.random.Generator) -> SuiteResult:
    """Budgeted selections never beat the exhaustive optimum and honor T_used.

    Small instances only: every C-subset is scored by the oracle.  Runs a
    tenth of the configured trials since each one is exhaustive.
    """
    trials = max(cfg.trials // 10, 5)
    checks = 0
    ratios = []
    for t in range(trials):
        n = int(rng.integers(2, 13))
        G = PathGraph(n, 1.0 - rng.random(n - 1))
        mu = MUS[t % len(MUS)]
        C = int(rng.integers(1, 4))
        result = budgeted_sample(G, C, mu)
        L = path_laplacian(G)
        achieved = lambda_min_tridiagonal(
            coefficient_matrix(result.a.astype(float), mu, L)
        )
        if result.T_used is not None:
            checks += 1
            if achieved < result.T_used - 1e-8:
                return SuiteResult(
                    "budget-bruteforce",
                    checks,
                    f"achieved lambda_min {achieved!r} below T_used {result.T_used!r}\n"
                    f"  weights={G.weights.tolist()}\n  mu={mu} C={C}",
                )
        if not result.budget_infeasible and C < n:
            best = -np.inf
            for subset in itertools.combinations(range(n), C):
                a = np.zeros(n)
                a[list(subset)] = 1.0
                best = max(best, lambda_min_tridiagonal(coefficient_matrix(a, mu, L)))
            checks += 1
            if achieved > best + 1e-9:
                return SuiteResult(
                    "budget-bruteforce",
                    checks,
                    f"achieved lambda_min {achieved!r} beats exhaustive optimum {best!r}\n"
                    f"  weights={G.weights.tolist()}\n  mu={mu} C={C}",
                )
            if best > 0:
                ratios.append(achieved / best)
    note = f"mean achieved/optimum ratio {np.mean(ratios):.3f}" if ratios else None
    return SuiteResult("budget-bruteforce", checks, None, note)


SUITES = (
    check_bound_soundness,
    check_left_end_preservation,
    check_partition_certificate,
    check_monotonicity,
    check_budget_bruteforce,
)


def run_all(cfg: VerifyConfig, out=print) -> int:
    """Run every suite; print one line each, counterexamples on failure.

    Returns 0 when every property held, 1 otherwise.
    """
    rng = np.random.default_rng(cfg.seed)
    failed = False
    for suite in SUITES:
        result = suite(cfg, rng)
        if result.ok:
            suffix = f" ({result.note})" if result.note else ""
            out(f"ok   {result.name}: {result.checks} checks{suffix}")
        else:
            failed = True
            out(f"FAIL {result.name} after {result.checks} checks")
            out("counterexample:")
            for line in result.failure.splitlines():
                out(f"  {line}")
    return 1 if failed else 0
