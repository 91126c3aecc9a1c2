"""
:module: src.features.tiling
:synopsis: Per-track normalization, window tiling of utterances, and feature deltas.

Notes
-----
- Normalization statistics come from "speech" frames only: frames whose
  intensity is above the track's 30th percentile (all frames when that mask
  is empty, e.g. a constant-intensity track).
- Tiling assigns a frame to the window containing its center; a window that
  catches no center borrows the frame nearest to the window's midpoint.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.config.settings import DELTA_MODES, ExtractionConfig
from src.models.features import BaseFeatureMatrix, FeatureVector
from src.models.layout import FEATURE_NAMES, N_WINDOWS, WINDOW_EDGES_PCT
from src.models.pairs import UtteranceSpan
from src.validation.errors import SignalTooShortError, SpanError

MIN_TRACK_FRAMES = 10
MIN_SPAN_FRAMES = 20

_INTENSITY_ROW = FEATURE_NAMES.index("intensity")
_EDGES = np.asarray(WINDOW_EDGES_PCT) / 100.0


def speech_mask(m: BaseFeatureMatrix, percentile: float = 30.0) -> np.ndarray:
    """Frames whose intensity lies strictly above the track percentile."""
    intensity = m.values[_INTENSITY_ROW]
    mask = intensity > np.percentile(intensity, percentile)
    return mask if mask.any() else np.ones_like(mask)


def normalize_per_track(m: BaseFeatureMatrix, config: ExtractionConfig | None = None) -> BaseFeatureMatrix:
    """Z-normalize every row with mean / sd over the track's speech frames.

    Raises
    ------
    SignalTooShortError
        Fewer than 10 frames.
    """
    cfg = config or ExtractionConfig()
    if m.n_frames < MIN_TRACK_FRAMES:
        raise SignalTooShortError(f"normalization needs >= {MIN_TRACK_FRAMES} frames, got {m.n_frames}")
    mask = speech_mask(m, cfg.speech_percentile)
    speech = m.values[:, mask]
    mean = speech.mean(axis=1, keepdims=True)
    sd = np.maximum(speech.std(axis=1, keepdims=True), cfg.sd_floor)
    return BaseFeatureMatrix((m.values - mean) / sd, m.grid, normalized=True)


def tile_values(values: np.ndarray, rel: np.ndarray) -> np.ndarray:
    """Window means of ``values`` (rows x frames) given each frame's relative position.

    ``rel`` is the frame-center offset as a fraction of the utterance duration,
    in ``[0, 1)``. Returns ``(rows, 10)`` (or ``(10,)`` for 1-D input).
    """
    values = np.asarray(values, dtype=float)
    squeeze = values.ndim == 1
    values = np.atleast_2d(values)
    rel = np.asarray(rel, dtype=float)
    out = np.empty((values.shape[0], N_WINDOWS))
    for j in range(N_WINDOWS):
        lo, hi = _EDGES[j], _EDGES[j + 1]
        inside = (rel >= lo) & (rel < hi)
        if inside.any():
            out[:, j] = values[:, inside].mean(axis=1)
        else:
            out[:, j] = values[:, int(np.argmin(np.abs(rel - 0.5 * (lo + hi))))]
    return out[0] if squeeze else out


def track_duration_bound(m: BaseFeatureMatrix) -> float:
    """Longest track duration (s) consistent with the frame grid."""
    g = m.grid
    return (g.n_frames * g.hop + g.frame_length - 1) / g.sample_rate


def tile_utterance(m: BaseFeatureMatrix, span: UtteranceSpan,
                   track_duration_s: Optional[float] = None,
                   utterance_id: Optional[str] = None) -> FeatureVector:
    """Tile the frames of ``span`` into the 100-dim FeatureVector.

    Raises
    ------
    SpanError
        Span ends after the track, or fewer than 20 frame centers fall inside it.
    """
    limit = track_duration_bound(m) if track_duration_s is None else track_duration_s
    if span.end_s > limit + 1e-9:
        raise SpanError(f"{span!r} ends after the track ({limit:.3f} s)")
    centers = m.grid.center_times()
    inside = (centers >= span.start_s) & (centers < span.end_s)
    n = int(inside.sum())
    if n < MIN_SPAN_FRAMES:
        raise SpanError(f"{span!r} covers {n} frames, need >= {MIN_SPAN_FRAMES}")
    rel = (centers[inside] - span.start_s) / span.duration_s
    return FeatureVector(tile_values(m.values[:, inside], rel).reshape(-1), utterance_id)


def delta_vector(seed: FeatureVector, reenactment: FeatureVector, mode: str = "signed") -> FeatureVector:
    """``seed - reenactment`` (signed) or its absolute value."""
    if mode not in DELTA_MODES:
        raise ValueError(f"delta mode must be one of {DELTA_MODES}")
    diff = seed.values - reenactment.values
    return FeatureVector(np.abs(diff) if mode == "absolute" else diff)


def delta_matrix(seeds: np.ndarray, reens: np.ndarray, mode: str = "signed") -> np.ndarray:
    """Row-wise ``delta_vector`` over stacked vectors."""
    if mode not in DELTA_MODES:
        raise ValueError(f"delta mode must be one of {DELTA_MODES}")
    diff = np.asarray(seeds, dtype=float) - np.asarray(reens, dtype=float)
    return np.abs(diff) if mode == "absolute" else diff
