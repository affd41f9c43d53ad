"""Scoring automatic keyframe summaries against human ones.

A summary is a sorted set of original-video frame numbers.  Because two
annotators rarely pick the exact same frame for the same moment, an automatic
frame counts as matching a user frame when the two indices differ by at most
a window (default 15 frames, about half a second at 30 fps).  Matching is
one-to-one and greedy by increasing index distance, so a single user frame
cannot reward two automatic frames.  From the matched count m:

    precision = m / |A|,  recall = m / |U|,  F1 = 2 P R / (P + R),

with empty-set and zero-division conventions pinned to 0.  Per-video scores
average over that video's users; dataset scores average per-video scores with
equal weight.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Summary",
    "MatchConfig",
    "EvalReport",
    "match_count",
    "prf",
    "evaluate_users",
    "aggregate_report",
]


@dataclass(frozen=True)
class Summary:
    """Keyframe set of one video: strictly increasing original frame numbers."""

    video: str
    frame_indices: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.frame_indices, dtype=int)
        if idx.ndim != 1:
            raise ValueError("frame indices must be a 1-D sequence")
        if idx.size and idx.min() < 0:
            raise ValueError("frame indices must be nonnegative")
        if idx.size > 1 and np.any(np.diff(idx) <= 0):
            raise ValueError("frame indices must be strictly increasing")
        object.__setattr__(self, "frame_indices", idx)

    def __len__(self) -> int:
        return self.frame_indices.shape[0]


@dataclass(frozen=True)
class MatchConfig:
    """Matching rule: one-to-one pairs within ``window`` frames of each other."""

    window: int = 15

    def __post_init__(self) -> None:
        if not isinstance(self.window, (int, np.integer)) or isinstance(self.window, bool):
            raise ValueError(f"window must be an integer, got {self.window!r}")
        if self.window < 0:
            raise ValueError(f"window must be nonnegative, got {self.window}")


def match_count(A: Summary, U: Summary, cfg: MatchConfig = MatchConfig()) -> int:
    """Greedy one-to-one matches between two summaries.

    Candidate pairs (a, u) with |a - u| <= window are consumed in order of
    increasing distance; ties fall to the earlier frame pair.  With window 0
    this reduces to the exact intersection size.
    """
    pairs = [
        (abs(int(a) - int(u)), int(a), int(u))
        for a in A.frame_indices
        for u in U.frame_indices
        if abs(int(a) - int(u)) <= cfg.window
    ]
    pairs.sort()
    used_a: set[int] = set()
    used_u: set[int] = set()
    m = 0
    for _, a, u in pairs:
        if a in used_a or u in used_u:
            continue
        used_a.add(a)
        used_u.add(u)
        m += 1
    return m


def prf(
    A: Summary, U: Summary, cfg: MatchConfig = MatchConfig()
) -> tuple[float, float, float]:
    """Precision, recall, and F1 of an automatic summary against one user."""
    m = match_count(A, U, cfg)
    p = m / len(A) if len(A) else 0.0
    r = m / len(U) if len(U) else 0.0
    f1 = 2.0 * p * r / (p + r) if p + r > 0.0 else 0.0
    return p, r, f1


def evaluate_users(
    auto: Summary, users: list[Summary], cfg: MatchConfig = MatchConfig()
) -> list[tuple[float, float, float]]:
    """Per-user (P, R, F1) triples for one video's automatic summary."""
    if not users:
        raise ValueError(f"video {auto.video!r} has no user summaries")
    return [prf(auto, u, cfg) for u in users]


@dataclass(frozen=True)
class EvalReport:
    """Aggregated scores: per user, per video, and over the whole dataset."""

    per_user: dict[str, list[tuple[float, float, float]]]
    per_video: dict[str, tuple[float, float, float]]
    dataset: tuple[float, float, float]


def aggregate_report(results: dict[str, list[tuple[float, float, float]]]) -> EvalReport:
    """Average per-user triples into per-video and dataset scores.

    ``results`` maps a video id to the ordered list of its per-user (P, R,
    F1) triples.  Videos are averaged with equal weight regardless of their
    user counts.
    """
    if not results:
        raise ValueError("cannot aggregate an empty result set")
    per_video: dict[str, tuple[float, float, float]] = {}
    for video, triples in results.items():
        if not triples:
            raise ValueError(f"video {video!r} has no user results")
        arr = np.asarray(triples, dtype=float)
        per_video[video] = tuple(arr.mean(axis=0))
    dataset = tuple(np.asarray(list(per_video.values())).mean(axis=0))
    return EvalReport(dict(results), per_video, dataset)
