"""
:module: src.cli.commands
:synopsis: The subcommands behind the command line: extract, experiment, score, split, synth.

Each ``cmd_*`` function takes plain arguments, does its work through the
library packages and returns a process exit code; argument parsing and
exception-to-exit-code mapping live in ``src.cli.main``.

Exit codes
----------
- ``0`` success
- ``1`` usage / configuration / unusable input
- ``2`` partial data failure (some tracks or pairs could not be processed, or
  ``score`` extraction settings that differ from the model's)
- ``3`` internal error
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence

from src.config.settings import FEATURE_VERSION, ExtractionConfig, RunConfig
from src.dataset.deltas import DeltaDataset, build_delta_dataset
from src.dataset.manifest import load_manifest
from src.dataset.splits import make_split
from src.dataset.synthetic import synthesize_corpus
from src.features.pipeline import (
    TrackFeatures, TrackKey, extract_track, extract_tracks, track_keys, utterance_vectors,
)
from src.features.tiling import delta_vector, tile_utterance
from src.importance.analysis import importance_battery
from src.importance.summaries import ScoreRow, group_scores, model_scores, role_summary
from src.models.features import FeatureVector
from src.models.pairs import PairRecord, UtteranceSpan
from src.models.split import SplitPlan
from src.persistence.csv_store import (
    VECTOR_FILE, cache_is_current, file_sha256, read_track_cache, read_vectors,
    write_track_cache, write_vectors,
)
from src.persistence.json_store import load_model, save_split
from src.predictors.base import MODEL_KINDS, TrainedModel
from src.predictors.evaluation import FoldRun, fit_model, run_folds
from src.report.tables import write_report
from src.validation.errors import ConfigError

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_PARTIAL, EXIT_INTERNAL = 0, 1, 2, 3

CACHE_DIR = "cache"


def load_features(records: Sequence[PairRecord], config: ExtractionConfig, cache_dir: str | Path,
                  n_jobs: int = 1) -> tuple[dict[str, FeatureVector], dict[str, str]]:
    """Tile every pair, reusing per-track caches whose source hash still matches.

    Returns
    -------
    (vectors, failures)
        Utterance vectors and ``pair_id -> reason`` for pairs that could not be built.
    """
    tracks: dict[TrackKey, TrackFeatures] = {}
    todo: list[TrackKey] = []
    hashes: dict[TrackKey, str] = {}
    missing: dict[TrackKey, str] = {}
    for key in track_keys(records):
        if not Path(key[0]).is_file():
            missing[key] = "audio file not found"
            logger.warning("track %s: audio file not found", key[0])
            continue
        hashes[key] = file_sha256(key[0])
        if cache_is_current(cache_dir, key, hashes[key], config):
            tracks[key] = read_track_cache(cache_dir, key)
        else:
            todo.append(key)
    logger.info("%d tracks cached, %d to extract", len(tracks), len(todo))

    fresh, errors = extract_tracks(todo, config, n_jobs)
    for key, tf in fresh.items():
        write_track_cache(cache_dir, tf, hashes[key], config)
    tracks.update(fresh)
    vectors, failures = utterance_vectors(records, tracks)
    if missing or errors:
        logger.warning("%d of %d tracks failed", len(missing) + len(errors), len(hashes) + len(missing))
    for pid, reason in sorted(failures.items()):
        logger.warning("pair %s skipped: %s", pid, reason)
    return vectors, failures


def cmd_extract(manifest: str | Path, out_dir: str | Path, config: ExtractionConfig | None = None,
                n_jobs: int = 1) -> int:
    """Per-track feature caches plus ``vectors.csv`` (one row per utterance) under ``out_dir``."""
    cfg = config or ExtractionConfig()
    records = load_manifest(manifest, check_audio=False)
    vectors, failures = load_features(records, cfg, out_dir, n_jobs)
    write_vectors(Path(out_dir) / VECTOR_FILE, vectors)
    logger.info("extracted %d utterances, %d pairs failed", len(vectors), len(failures))
    return EXIT_PARTIAL if failures else EXIT_OK


def _experiment_vectors(config: RunConfig, records: Sequence[PairRecord]
                        ) -> tuple[dict[str, FeatureVector], dict[str, str]]:
    if config.feature_cache:
        path = Path(config.feature_cache) / VECTOR_FILE
        if not path.is_file():
            raise ConfigError(f"feature cache {config.feature_cache} has no {VECTOR_FILE}; run extract first")
        vectors = read_vectors(path)
        failures = {r.pair_id: "not in feature cache" for r in records
                    if not all(uid in vectors for uid in r.utterance_ids())}
        return vectors, failures
    cache = Path(config.output_dir) / CACHE_DIR
    vectors, failures = load_features(records, config.extraction, cache, config.n_jobs)
    # extract layout, usable later as --feature-cache
    write_vectors(cache / VECTOR_FILE, vectors)
    return vectors, failures


def _score_all(data: DeltaDataset, plan: SplitPlan, config: RunConfig) -> list[FoldRun]:
    return [run_folds(kind, data, plan, config, n_jobs=config.n_jobs) for kind in MODEL_KINDS]


def cmd_experiment(config: RunConfig) -> int:
    """Train and evaluate the four models, run the importance battery, write the report."""
    cfg = config.validate()
    records = load_manifest(cfg.manifest_path, check_audio=False)
    vectors, failures = _experiment_vectors(cfg, records)
    data = build_delta_dataset(records, vectors, cfg.delta_mode)
    kept = [r for r in records if r.pair_id not in failures]
    plan = make_split(kept, cfg.split_kind, cfg.k, cfg.split_seed, cfg.train_group, cfg.test_group)
    logger.info("experiment on %d pairs, %s with %d folds", len(data), plan.kind, plan.n_folds)

    runs = _score_all(data, plan, cfg)
    scores = model_scores(runs, cfg.delta_mode)
    comparison: list[ScoreRow] = []
    if cfg.compare_delta_modes:
        other = cfg.other_delta_mode()
        comparison = scores + model_scores(_score_all(data.with_mode(other), plan, cfg), other)

    report = importance_battery(data, plan, cfg, runs[-1], cfg.n_jobs)
    models = [fit_model(kind, data, cfg) for kind in MODEL_KINDS]
    for model in models:
        model.extraction = cfg.extraction.to_dict()
    write_report(cfg.output_dir, cfg, plan, data, scores, report, group_scores(runs, data),
                 role_summary(data), models, comparison, failures)
    for row in scores:
        print(f"{row.model}\tr={'' if row.pearson is None else format(row.pearson, '.4f')}\tmse={row.mse:.4f}")
    return EXIT_PARTIAL if failures else EXIT_OK


def _utterance(path: str, start: float, end: Optional[float], channel: Optional[int],
               config: ExtractionConfig, uid: str) -> FeatureVector:
    tf = extract_track(path, channel, config)
    span = UtteranceSpan(path, start, tf.duration_s if end is None else end, channel)
    return tile_utterance(tf.matrix, span, tf.duration_s, uid)


def score_pair(model: str | Path | TrainedModel, seed: tuple[str, float, Optional[float], Optional[int]],
               reen: tuple[str, float, Optional[float], Optional[int]],
               config: ExtractionConfig | None = None, delta_mode: str = "signed") -> tuple[str, float]:
    """(kind, value) of a model (or saved model file) on one seed / re-enactment pair.

    ``seed`` and ``reen`` are ``(wav, start_s, end_s or None, channel or None)``.

    Raises
    ------
    ModelError
        Unreadable model or a feature version different from this extractor's.
    """
    cfg = config or ExtractionConfig()
    if not isinstance(model, TrainedModel):
        model = load_model(model)
    model.check_compatible(FEATURE_VERSION)
    s = _utterance(*seed, cfg, "seed")
    r = _utterance(*reen, cfg, "reen")
    return model.kind, model.predict_one(delta_vector(s, r, delta_mode).values)


def cmd_score(model_path: str | Path, seed, reen, config: ExtractionConfig | None = None,
              delta_mode: str = "signed") -> int:
    """Print one pair's score; exit 2 when the extraction settings differ from the model's."""
    cfg = config or ExtractionConfig()
    model = load_model(model_path)
    differing = model.extraction_mismatch(cfg.to_dict())
    if differing:
        logger.error("%s was trained with other extraction settings (%s); pass its run config with --config",
                     model_path, ", ".join(differing))
        return EXIT_PARTIAL
    kind, value = score_pair(model, seed, reen, cfg, delta_mode)
    label = "distance" if kind == "euclidean" else "similarity"
    print(f"{kind}\t{label}\t{value:.6f}")
    return EXIT_OK


def cmd_split(manifest: str | Path, out_path: str | Path, kind: str, k: int = 10, seed: int = 0,
              train_group: Optional[str] = None, test_group: Optional[str] = None) -> int:
    records = load_manifest(manifest, check_audio=False)
    plan = make_split(records, kind, k, seed, train_group, test_group)
    save_split(out_path, plan)
    logger.info("wrote %r to %s", plan, out_path)
    return EXIT_OK


def cmd_synth(out_dir: str | Path, n_pairs: int = 40, seed: int = 0, judgment_noise: float = 0.2) -> int:
    manifest = synthesize_corpus(out_dir, n_pairs, seed, judgment_noise)
    print(manifest)
    return EXIT_OK
