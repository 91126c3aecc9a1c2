"""
:module: src.features.pipeline
:synopsis: Track-level extraction (decode, base features, normalize) and utterance tiling.

A manifest references each track (file + optional channel) possibly many
times; every track is decoded and analysed once, tracks run in parallel
through ``joblib``, and each span is tiled from its track's normalized matrix.

Notes
-----
- Failures are collected per track / per pair instead of aborting, so a
  caller can report partial results (``extract`` exits with code 2 then).
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional

from joblib import Parallel, delayed

from src.audio.wav_io import load_canonical
from src.config.settings import ExtractionConfig
from src.models.features import BaseFeatureMatrix, FeatureVector
from src.models.pairs import PairRecord
from src.validation.errors import ProsodyToolkitError
from .base import base_features
from .tiling import normalize_per_track, tile_utterance

logger = logging.getLogger(__name__)

TrackKey = tuple[str, Optional[int]]


class TrackFeatures:
    """
    Normalized per-frame features of one decoded track.

    Parameters
    ----------
    key : (str, int or None)
        Track path and channel choice.
    matrix : BaseFeatureMatrix
        Normalized base features.
    duration_s : float
        Length of the canonical buffer.
    """
    __slots__ = ("key", "matrix", "duration_s")

    def __init__(self, key: TrackKey, matrix: BaseFeatureMatrix, duration_s: float) -> None:
        if not matrix.normalized:
            raise ValueError("TrackFeatures holds normalized matrices only.")
        if duration_s <= 0:
            raise ValueError("duration_s must be > 0.")
        self.key = (str(key[0]), key[1])
        self.matrix = matrix
        self.duration_s = float(duration_s)

    def __repr__(self) -> str:
        return f"TrackFeatures({self.key!r}, frames={self.matrix.n_frames})"


def extract_track(path: str, channel: Optional[int] = None,
                  config: ExtractionConfig | None = None) -> TrackFeatures:
    """Decode, analyse and normalize one track."""
    cfg = config or ExtractionConfig()
    buf = load_canonical(path, channel, cfg.sample_rate)
    matrix = normalize_per_track(base_features(buf, cfg), cfg)
    logger.info("extracted %s (%d frames)", path, matrix.n_frames)
    return TrackFeatures((path, channel), matrix, buf.duration_s)


def _extract_or_error(key: TrackKey, config: ExtractionConfig):
    try:
        return key, extract_track(key[0], key[1], config), None
    except ProsodyToolkitError as exc:
        return key, None, str(exc)


def track_keys(records: Iterable[PairRecord]) -> list[TrackKey]:
    """Distinct tracks referenced by ``records``, in a stable order."""
    keys = {span.track_key() for r in records for span in (r.seed, r.reenactment)}
    return sorted(keys, key=lambda k: (k[0], -1 if k[1] is None else k[1]))


def extract_tracks(keys: Iterable[TrackKey], config: ExtractionConfig | None = None,
                   n_jobs: int = 1) -> tuple[dict[TrackKey, TrackFeatures], dict[TrackKey, str]]:
    """Extract every track; returns ``(features, errors)`` keyed by track."""
    cfg = config or ExtractionConfig()
    results = Parallel(n_jobs=n_jobs)(delayed(_extract_or_error)(key, cfg) for key in keys)
    tracks: dict[TrackKey, TrackFeatures] = {}
    errors: dict[TrackKey, str] = {}
    for key, tf, err in results:
        if err is None:
            tracks[key] = tf
        else:
            logger.warning("track %s failed: %s", key[0], err)
            errors[key] = err
    return tracks, errors


def utterance_vectors(records: Iterable[PairRecord], tracks: dict[TrackKey, TrackFeatures]
                      ) -> tuple[dict[str, FeatureVector], dict[str, str]]:
    """Tile seed and re-enactment of every pair.

    Returns
    -------
    (vectors, failures)
        ``vectors`` keyed by utterance id (``<pair_id>:seed`` / ``<pair_id>:reen``);
        ``failures`` maps pair ids to the first error met. A pair is either
        complete in ``vectors`` or listed in ``failures``.
    """
    vectors: dict[str, FeatureVector] = {}
    failures: dict[str, str] = {}
    for r in records:
        pair: dict[str, FeatureVector] = {}
        for uid, span in zip(r.utterance_ids(), (r.seed, r.reenactment)):
            tf = tracks.get(span.track_key())
            if tf is None:
                failures[r.pair_id] = f"track {span.track_path} unavailable"
                break
            try:
                pair[uid] = tile_utterance(tf.matrix, span, tf.duration_s, uid)
            except ProsodyToolkitError as exc:
                failures[r.pair_id] = str(exc)
                break
        else:
            vectors.update(pair)
    return vectors, failures
