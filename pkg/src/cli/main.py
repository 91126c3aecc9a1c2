"""
:module: src.cli.main
:synopsis: ``argparse`` front end; maps toolkit errors to exit codes.

Usage::

    python -m src.cli extract    --manifest pairs.csv --out features/
    python -m src.cli experiment --manifest pairs.csv --out run/ [--config run.json]
    python -m src.cli score      --model run/models/forest.json --seed a.wav 0.5 2.1 --reen b.wav 1.0 2.4
    python -m src.cli split      --manifest pairs.csv --out split.json --kind k-fold --k 10
    python -m src.cli synth      --out corpus/ --pairs 40

Flags override values read from ``--config``. A ``run_metadata.json`` from
an earlier run is accepted as a config file (its ``config`` block is used).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from src.config.settings import DELTA_MODES, SPLIT_KINDS, ExtractionConfig, RunConfig
from src.validation.errors import ConfigError, ProsodyToolkitError
from . import commands

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# flag dest -> RunConfig field, for flags that map one to one
_RUN_FLAGS = ("manifest_path", "output_dir", "split_kind", "k", "split_seed", "train_group",
              "test_group", "delta_mode", "knn_k", "ridge_lambda", "n_jobs", "feature_cache")
_FOREST_FLAGS = {"n_trees": "n_trees", "max_depth": "max_depth", "min_leaf": "min_leaf",
                 "features_per_split": "features_per_split", "forest_seed": "rng_seed"}


def read_config_file(path: str | Path) -> dict[str, Any]:
    """JSON config (or a previous run's metadata) as a plain dict."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    if "config" in data and "feature_version" in data:
        data = data["config"]
    data.pop("schema_version", None)
    return data


def _subset_arg(text: str) -> dict[str, Any]:
    """``only:types=pitch_highness,cpps`` or ``exclude:windows=7,8``."""
    try:
        mode, rest = text.split(":", 1)
        what, values = rest.split("=", 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad subset {text!r} (want mode:types=a,b or mode:windows=1,2)")
    items = [v.strip() for v in values.split(",") if v.strip()]
    if what == "windows":
        try:
            items = [int(v) for v in items]
        except ValueError:
            raise argparse.ArgumentTypeError(f"window indices must be integers in {text!r}")
    elif what != "types":
        raise argparse.ArgumentTypeError(f"subset selects types or windows, got {what!r}")
    return {what: items, "mode": mode}


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """File values first, then every flag the user actually gave."""
    d = read_config_file(args.config) if args.config else {}
    for name in _RUN_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            d[name] = value
    forest = dict(d.get("forest") or {})
    for flag, key in _FOREST_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            forest[key] = value
    d["forest"] = forest
    if args.subset:
        d["subsets"] = list(d.get("subsets") or []) + args.subset
    if args.compare_delta_modes:
        d["compare_delta_modes"] = True
    try:
        return RunConfig.from_dict(d)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def _span_arg(values: Sequence[str], channel: Optional[int]) -> tuple[str, float, Optional[float], Optional[int]]:
    if not 1 <= len(values) <= 3:
        raise ConfigError("a span is WAV [START_S [END_S]]")
    try:
        start = float(values[1]) if len(values) > 1 else 0.0
        end = float(values[2]) if len(values) > 2 else None
    except ValueError as exc:
        raise ConfigError(f"span times must be numbers: {exc}") from exc
    return values[0], start, end, channel


def _extraction_from_args(args: argparse.Namespace) -> ExtractionConfig:
    if not args.config:
        return ExtractionConfig()
    d = read_config_file(args.config)
    return ExtractionConfig.from_dict(d.get("extraction", d) or {})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prosim", description="Prosodic pragmatic-similarity toolkit.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="per-track feature caches and utterance vectors")
    ex.add_argument("--manifest", required=True)
    ex.add_argument("--out", required=True)
    ex.add_argument("--config", help="JSON with extraction constants (or a full run config)")
    ex.add_argument("--jobs", type=int, default=1)

    xp = sub.add_parser("experiment", help="train, evaluate, importance battery, report")
    xp.add_argument("--config")
    xp.add_argument("--manifest", dest="manifest_path")
    xp.add_argument("--out", dest="output_dir")
    xp.add_argument("--split", dest="split_kind", choices=SPLIT_KINDS)
    xp.add_argument("--k", type=int)
    xp.add_argument("--split-seed", type=int)
    xp.add_argument("--train-group")
    xp.add_argument("--test-group")
    xp.add_argument("--delta-mode", choices=DELTA_MODES)
    xp.add_argument("--knn-k", type=int)
    xp.add_argument("--ridge-lambda", type=float)
    xp.add_argument("--n-trees", type=int)
    xp.add_argument("--max-depth", type=int)
    xp.add_argument("--min-leaf", type=int)
    xp.add_argument("--features-per-split", type=int)
    xp.add_argument("--forest-seed", type=int)
    xp.add_argument("--subset", action="append", type=_subset_arg, default=[],
                    help="extra subset experiment, e.g. only:types=cpps or exclude:windows=7,8")
    xp.add_argument("--compare-delta-modes", action="store_true")
    xp.add_argument("--jobs", dest="n_jobs", type=int)
    xp.add_argument("--feature-cache", help="directory of an earlier extract run")

    sc = sub.add_parser("score", help="score one seed / re-enactment pair with a saved model")
    sc.add_argument("--model", required=True)
    sc.add_argument("--seed", nargs="+", required=True, metavar="WAV [START END]")
    sc.add_argument("--reen", nargs="+", required=True, metavar="WAV [START END]")
    sc.add_argument("--seed-channel", type=int)
    sc.add_argument("--reen-channel", type=int)
    sc.add_argument("--delta-mode", choices=DELTA_MODES, default="signed")
    sc.add_argument("--config", help="JSON with extraction constants (or a full run config)")

    sp = sub.add_parser("split", help="write a split plan for a manifest")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--kind", choices=SPLIT_KINDS, default="session-holdout")
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--train-group")
    sp.add_argument("--test-group")

    sy = sub.add_parser("synth", help="render a synthetic corpus with a planted judgment model")
    sy.add_argument("--out", required=True)
    sy.add_argument("--pairs", type=int, default=40)
    sy.add_argument("--seed", type=int, default=0)
    sy.add_argument("--judgment-noise", type=float, default=0.2)
    return p


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "extract":
        return commands.cmd_extract(args.manifest, args.out, _extraction_from_args(args), args.jobs)
    if args.command == "experiment":
        return commands.cmd_experiment(run_config_from_args(args))
    if args.command == "score":
        return commands.cmd_score(args.model, _span_arg(args.seed, args.seed_channel),
                                  _span_arg(args.reen, args.reen_channel),
                                  _extraction_from_args(args), args.delta_mode)
    if args.command == "split":
        return commands.cmd_split(args.manifest, args.out, args.kind, args.k, args.seed,
                                  args.train_group, args.test_group)
    return commands.cmd_synth(args.out, args.pairs, args.seed, args.judgment_noise)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return commands.EXIT_OK if exc.code == 0 else commands.EXIT_USAGE
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)
    try:
        return _dispatch(args)
    except ProsodyToolkitError as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return commands.EXIT_USAGE
    except Exception:
        logger.exception("internal error")
        return commands.EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
