"""Command-line entry point.

Subcommands mirror the run stages: generate, place, sweep, train (the full
pipeline), plus compare and ransac for validating simulated engagement
against observations.  Exit codes: 0 ok, 2 config error, 3 data error,
4 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import ConfigError, DataError, EngageSimError
from .experiment import (ExperimentConfig, parse_config_text, run_compare,
                         run_experiment, run_ransac)

_STAGE_COMMANDS = ("generate", "place", "sweep", "train")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engagesim",
        description="Simulate sentiment-gated cascades and train content policies.")
    sub = parser.add_subparsers(dest="command", required=True)
    help_text = {
        "generate": "build a synthetic network and write edges/opinions/communities",
        "place": "generate (or load) a network and choose the injection node",
        "sweep": "additionally sweep sentiment against cascade size",
        "train": "full pipeline: network, placement, sweep, policy training",
        "compare": "simulate observed texts and write simulated-vs-observed pairs",
        "ransac": "robust line fit of observed counts against simulated counts",
    }
    for name in _STAGE_COMMANDS + ("compare", "ransac"):
        cmd = sub.add_parser(name, help=help_text[name])
        cmd.add_argument("--config", required=True, help="key=value config file")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the config's master seed")
        cmd.add_argument("--out", default=None,
                         help="output directory (default: $ENGAGESIM_OUT or ./out)")
    return parser


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {args.config!r}: {exc}") from None
    mapping = parse_config_text(text)
    if args.seed is not None:
        mapping["seed"] = str(args.seed)
    return ExperimentConfig.from_mapping(mapping)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, 0 on --help; keep its code
        return int(exc.code or 0)
    out_dir = Path(args.out or os.environ.get("ENGAGESIM_OUT") or "out")
    try:
        config = _load_config(args)
        if args.command in _STAGE_COMMANDS:
            result = run_experiment(config, out_dir, stages=args.command)
            print(f"wrote {args.command} artifacts to {out_dir}")
            if result.train_result is not None:
                logs = result.train_result.logs
                final = logs[-1].reward if logs else float("nan")
                print(f"steps = {len(logs)}  final_reward = {final:.4f}  "
                      f"stop = {result.train_result.stop_reason}")
        elif args.command == "compare":
            records = run_compare(config, out_dir)
            print(f"wrote {len(records)} comparison rows to {out_dir / 'compare.csv'}")
        else:
            fit = run_ransac(config, out_dir)
            print(f"slope = {fit.slope:.6f}  intercept = {fit.intercept:.6f}  "
                  f"inliers = {fit.inlier_count}/{len(fit.inliers)}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DataError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except EngageSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except Exception as exc:  # surface unexpected failures without a traceback wall
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
