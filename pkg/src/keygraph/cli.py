"""Command-line pipeline: sample keyframes, evaluate summaries, verify claims.

Exit codes are uniform across subcommands: 0 for success (a budget-infeasible
selection still counts, the flag is in the output), 1 for usage errors, 2 for
data errors such as unreadable or invalid input files.
"""

import argparse
import json
import sys
from pathlib import Path

from .evaluation import MatchConfig, Summary, aggregate_report, evaluate_users
from .features_io import load_features, to_frame_index
from .graph import build_spg
from .sampler import SamplerParams, budgeted_sample, partition_sample
from .verify import VerifyConfig, run_all

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; this pipeline reserves 2 for
    data errors, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="keygraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sample = sub.add_parser("sample", help="select keyframes from a feature file")
    sample.add_argument("features", help="feature file (binary format or .csv)")
    mode = sample.add_mutually_exclusive_group(required=True)
    mode.add_argument("--budget", type=int, help="maximum number of keyframes")
    mode.add_argument("--threshold", type=float, help="alignment threshold T in (0, 1)")
    sample.add_argument("--mu", type=float, default=0.01, help="smoothness weight (default 0.01)")
    sample.add_argument(
        "--epsilon", type=float, default=1e-7, help="binary-search precision (default 1e-7)"
    )
    sample.add_argument("--video", help="video id (default: feature-file stem)")
    sample.add_argument("--output", help="write the result here instead of stdout")
    sample.add_argument("--format", choices=("json", "csv"), default="json")

    evaluate = sub.add_parser("evaluate", help="score summaries against user summaries")
    evaluate.add_argument("--auto", help="automatic summary JSON for one video")
    evaluate.add_argument("--users", help="directory of user summary JSON files")
    evaluate.add_argument("--manifest", help="JSON manifest of videos to score")
    evaluate.add_argument(
        "--window", type=int, default=15, help="matching window in frames (default 15)"
    )
    evaluate.add_argument("--output", help="write the report here instead of stdout")

    verify = sub.add_parser("verify", help="run the randomized property suites")
    verify.add_argument("--trials", type=int, default=500)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--max-nodes", type=int, default=32)
    verify.add_argument(
        "--inject-fault", choices=("scale-radius",), default=None, help=argparse.SUPPRESS
    )
    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        print(text)
    else:
        Path(output).write_text(text + "\n", encoding="utf-8")


def _run_sample(args, parser: _Parser) -> int:
    if args.budget is not None and args.budget < 1:
        parser.error(f"--budget must be at least 1, got {args.budget}")
    if args.threshold is not None and not 0.0 < args.threshold < 1.0:
        parser.error(f"--threshold must lie in (0, 1), got {args.threshold}")
    if not args.mu > 0.0:
        parser.error(f"--mu must be positive, got {args.mu}")
    if not 0.0 < args.epsilon < 1.0:
        parser.error(f"--epsilon must lie in (0, 1), got {args.epsilon}")

    X, header = load_features(args.features)
    graph = build_spg(X)
    if args.budget is not None:
        result = budgeted_sample(graph, args.budget, args.mu, args.epsilon)
    else:
        result = partition_sample(graph, SamplerParams(args.mu, args.threshold, args.epsilon))
    video = args.video if args.video is not None else Path(args.features).stem
    frames = [to_frame_index(int(row), header) for row in result.samples]

    if args.format == "json":
        text = json.dumps(
            {
                "video": video,
                "frame_indices": frames,
                "T_used": result.T_used,
                "budget_infeasible": result.budget_infeasible,
                "subgraphs": [[lo, hi] for lo, hi in result.subgraphs],
            },
            indent=2,
        )
    else:
        lines = ["# video,frame_index"] + [f"{video},{frame}" for frame in frames]
        text = "\n".join(lines)
    _emit(text, args.output)
    return 0


def _read_summary(path: Path) -> Summary:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON: {exc}") from exc
    if not isinstance(payload, dict) or "video" not in payload or "frame_indices" not in payload:
        raise ValueError(f"{path}: a summary needs 'video' and 'frame_indices' fields")
    return Summary(str(payload["video"]), payload["frame_indices"])


def _evaluate_entries(args, parser: _Parser) -> list[tuple[Summary, list[Summary]]]:
    if args.manifest is not None:
        if args.auto is not None or args.users is not None:
            parser.error("--manifest cannot be combined with --auto/--users")
        try:
            entries = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{args.manifest}: malformed JSON: {exc}") from exc
        if not isinstance(entries, list) or not entries:
            raise ValueError(f"{args.manifest}: expected a nonempty JSON list")
        out = []
        for entry in entries:
            auto = _read_summary(Path(entry["auto_path"]))
            users = [_read_summary(Path(p)) for p in entry["user_paths"]]
            expected = str(entry["video"])
            for s in [auto] + users:
                if s.video != expected:
                    raise ValueError(
                        f"summary for video {s.video!r} listed under {expected!r}"
                    )
            out.append((auto, users))
        return out
    if args.auto is None or args.users is None:
        parser.error("provide --auto and --users, or --manifest")
    auto = _read_summary(Path(args.auto))
    user_dir = Path(args.users)
    if not user_dir.is_dir():
        raise ValueError(f"{user_dir} is not a directory")
    files = sorted(user_dir.glob("*.json"))
    if not files:
        raise ValueError(f"no user summaries (*.json) found in {user_dir}")
    users = [_read_summary(p) for p in files]
    for s in users:
        if s.video != auto.video:
            raise ValueError(
                f"user summary {s.video!r} does not match automatic summary {auto.video!r}"
            )
    return [(auto, users)]


def _run_evaluate(args, parser: _Parser) -> int:
    if args.window < 0:
        parser.error(f"--window must be nonnegative, got {args.window}")
    cfg = MatchConfig(args.window)
    entries = _evaluate_entries(args, parser)
    results = {auto.video: evaluate_users(auto, users, cfg) for auto, users in entries}
    report = aggregate_report(results)

    def triple(values) -> dict:
        p, r, f1 = values
        return {"precision": p, "recall": r, "f1": f1}

    payload = {
        "videos": {
            video: {**triple(report.per_video[video]), "users": [triple(t) for t in triples]}
            for video, triples in report.per_user.items()
        },
        "dataset": triple(report.dataset),
    }
    _emit(json.dumps(payload, indent=2), args.output)
    return 0


def _run_verify(args, parser: _Parser) -> int:
    if args.trials < 1:
        parser.error(f"--trials must be at least 1, got {args.trials}")
    if args.max_nodes < 2:
        parser.error(f"--max-nodes must be at least 2, got {args.max_nodes}")
    return run_all(VerifyConfig(args.trials, args.seed, args.max_nodes, args.inject_fault))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sample":
            return _run_sample(args, parser)
        if args.command == "evaluate":
            return _run_evaluate(args, parser)
        return _run_verify(args, parser)
    except (ValueError, OSError) as exc:
        print(f"keygraph: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
