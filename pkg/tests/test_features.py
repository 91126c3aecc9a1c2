"""
:module: tests.test_features
:synopsis: Tests for the base features, per-track normalization, tiling and deltas.

Notes
-----
- Tiling is checked against a direct frame-assignment oracle written as
  plain loops.
- ``tiny_corpus`` exercises the whole path from WAV to FeatureVector.
"""

import logging

import numpy as np
import pytest

from scipy.stats import spearmanr

from src.config import ExtractionConfig
from src.dataset import load_manifest
from src.dsp import autocorr_pitch, frame_signal
from src.features import (
    base_features, delta_vector, extract_track, extract_tracks, normalize_per_track,
    tile_utterance, track_keys, utterance_vectors,
)
from src.features.base import centered_mean
from src.features.tiling import speech_mask
from src.models import AudioBuffer, BaseFeatureMatrix, FeatureVector, FrameGrid, UtteranceSpan
from src.models.layout import FEATURE_NAMES, WINDOW_EDGES_PCT
from src.validation import SignalTooShortError, SpanError


def _matrix(values, hop=160, frame=512, sr=16000, normalized=True):
    values = np.asarray(values, dtype=float)
    return BaseFeatureMatrix(values, FrameGrid(frame, hop, values.shape[1], sr), normalized)


def _tile_oracle(m, start, end):
    """Window means by explicit frame assignment (nearest frame for empty windows)."""
    centers = [(i * m.grid.hop + m.grid.frame_length / 2) / m.grid.sample_rate for i in range(m.n_frames)]
    frames = [(i, (c - start) / (end - start)) for i, c in enumerate(centers) if start <= c < end]
    out = np.zeros((10, 10))
    for j in range(10):
        lo, hi = WINDOW_EDGES_PCT[j] / 100, WINDOW_EDGES_PCT[j + 1] / 100
        members = [i for i, rel in frames if lo <= rel < hi]
        if members:
            out[:, j] = [sum(m.values[f, i] for i in members) / len(members) for f in range(10)]
        else:
            mid = (lo + hi) / 2
            nearest = min(frames, key=lambda fr: abs(fr[1] - mid))[0]
            out[:, j] = m.values[:, nearest]
    return out.reshape(-1)


def test_centered_mean_averages_only_existing_frames():
    out = centered_mean(np.array([1.0, 2.0, 3.0, 4.0, 5.0]), 1)
    assert out == pytest.approx([1.5, 2.0, 3.0, 4.0, 4.5])
    assert centered_mean(np.array([1.0, 2.0]), 0).tolist() == [1.0, 2.0]


def test_base_features_shape_and_finiteness(tone):
    m = base_features(tone(180.0, 1.0))
    assert m.values.shape == (10, m.grid.n_frames)
    assert np.all(np.isfinite(m.values))
    assert not m.normalized


def test_silence_zeroes_pitch_rows_with_warning(caplog):
    silent = AudioBuffer(np.zeros(16000), 16000)
    with caplog.at_level(logging.WARNING, logger="src.features.base"):
        m = base_features(silent)
    assert "no voiced frames" in caplog.text
    for name in ("pitch_highness", "pitch_lowness", "pitch_wideness", "pitch_narrowness",
                 "peak_disalignment"):
        assert np.all(m.row(name) == 0.0)
    assert np.allclose(m.row("intensity"), -100.0)


def _vowel(f0_hz, duration_s=1.2, sr=16000):
    """Five decaying harmonics of a fixed f0."""
    t = np.arange(int(duration_s * sr)) / sr
    return AudioBuffer(sum(0.3 / h * np.sin(2 * np.pi * h * f0_hz * t) for h in range(1, 6)), sr)


def test_monotone_vowel_is_narrow_not_wide():
    m = base_features(_vowel(200.0))
    interior = slice(30, m.n_frames - 30)
    assert np.max(m.row("pitch_wideness")[interior]) <= 0.1
    assert np.min(m.row("pitch_narrowness")[interior]) >= 0.9


def test_rising_glide_raises_highness_over_time():
    sr, duration = 16000, 1.5
    t = np.arange(int(duration * sr)) / sr
    f = 150.0 + 150.0 * t / duration
    buf = AudioBuffer(0.5 * np.sin(2 * np.pi * np.cumsum(f) / sr), sr)
    m = base_features(buf)
    voiced = autocorr_pitch(buf, frame_signal(buf)).voiced
    assert voiced.mean() >= 0.9
    rho, _ = spearmanr(np.flatnonzero(voiced), m.row("pitch_highness")[voiced])
    assert rho > 0.9


def test_doubling_the_gain_leaves_the_vector_alone():
    sr = 16000
    t = np.arange(int(1.5 * sr)) / sr
    envelope = 0.1 + 0.3 * np.sin(np.pi * t / 1.5) ** 2
    rng = np.random.default_rng(5)
    samples = envelope * np.sin(2 * np.pi * (180.0 * t + 10.0 * t * t)) + rng.normal(0.0, 0.01, t.size)
    buf = AudioBuffer(samples, sr)
    span = UtteranceSpan("t.wav", 0.0, buf.duration_s)
    quiet = tile_utterance(normalize_per_track(base_features(buf)), span, buf.duration_s).values.reshape(10, 10)
    loud = tile_utterance(normalize_per_track(base_features(buf.scaled(2.0))), span,
                          buf.duration_s).values.reshape(10, 10)
    diff = np.abs(loud - quiet)
    intensity = FEATURE_NAMES.index("intensity")
    assert np.max(diff[intensity]) <= 1e-3
    assert np.max(np.delete(diff, intensity, axis=0)) <= 0.1


def test_noise_has_higher_speaking_rate_than_a_steady_tone(tone, noise):
    steady = base_features(tone(150.0, 1.0)).row("speaking_rate").mean()
    busy = base_features(noise).row("speaking_rate").mean()
    assert busy > steady


def test_normalization_uses_speech_frames():
    """Speech frames end up with mean 0 / sd 1; constant rows become 0."""
    rng = np.random.default_rng(0)
    values = rng.normal(3.0, 2.0, (10, 200))
    values[FEATURE_NAMES.index("cpps")] = 7.0
    m = _matrix(values, normalized=False)
    mask = speech_mask(m, 30.0)
    out = normalize_per_track(m)
    assert out.normalized
    assert np.allclose(out.values[:, mask].mean(axis=1)[:5], 0.0, atol=1e-9)
    assert np.allclose(out.values[0, mask].std(), 1.0)
    assert np.all(out.row("cpps") == 0.0)


def test_normalization_is_idempotent():
    rng = np.random.default_rng(2)
    for _ in range(5):
        once = normalize_per_track(_matrix(rng.normal(1.0, 3.0, (10, 150)), normalized=False))
        twice = normalize_per_track(once)
        assert np.max(np.abs(twice.values - once.values)) <= 1e-6


def test_normalization_needs_ten_frames():
    with pytest.raises(SignalTooShortError):
        normalize_per_track(_matrix(np.zeros((10, 9)), normalized=False))


def test_speech_mask_falls_back_to_all_frames():
    assert speech_mask(_matrix(np.ones((10, 30)), normalized=False)).all()


def test_tiling_matches_frame_assignment_oracle():
    rng = np.random.default_rng(11)
    m = _matrix(rng.normal(size=(10, 400)))
    track_s = (400 * 160 + 511) / 16000
    for _ in range(50):
        start = rng.uniform(0.0, track_s - 0.6)
        end = min(track_s, start + rng.uniform(0.25, 2.5))
        v = tile_utterance(m, UtteranceSpan("t.wav", start, end))
        assert v.values.shape == (100,)
        assert np.max(np.abs(v.values - _tile_oracle(m, start, end))) <= 1e-9


def test_frame_index_row_tiles_to_window_midpoints():
    m = _matrix(np.tile(np.arange(100.0), (10, 1)))
    # frame centers sit at 0.016 + 0.01 i, so each frame lands 0.005 inside its slot
    v = tile_utterance(m, UtteranceSpan("t.wav", 0.011, 1.011))
    assert v.get("intensity", 0) == pytest.approx(2.0)
    assert v.get("intensity", WINDOW_EDGES_PCT.index(30.0)) == pytest.approx(39.5)
    assert v.get("intensity", 9) == pytest.approx(97.0)


def test_short_span_borrows_nearest_frames():
    """20 frames over 10 windows: narrow edge windows still get a value."""
    m = _matrix(np.tile(np.arange(40.0), (10, 1)))
    start = 0.0
    end = 0.215
    v = tile_utterance(m, UtteranceSpan("t.wav", start, end))
    assert np.all(np.isfinite(v.values))
    assert v.get("intensity", 0) <= v.get("intensity", 9)


def test_span_errors():
    m = _matrix(np.zeros((10, 100)))
    with pytest.raises(SpanError):
        tile_utterance(m, UtteranceSpan("t.wav", 0.1, 0.2))
    with pytest.raises(SpanError):
        tile_utterance(m, UtteranceSpan("t.wav", 0.5, 5.0))


def test_delta_modes():
    a = FeatureVector(np.arange(100.0))
    b = FeatureVector(np.full(100, 50.0))
    assert delta_vector(a, b).values[0] == -50.0
    assert delta_vector(a, b, "absolute").values[0] == 50.0
    assert np.all(delta_vector(a, a).values == 0.0)
    with pytest.raises(ValueError):
        delta_vector(a, b, "squared")


def test_extract_track_from_rendered_corpus(tiny_corpus):
    records = load_manifest(tiny_corpus)
    keys = track_keys(records)
    assert len(keys) == 2
    tf = extract_track(keys[0][0], keys[0][1], ExtractionConfig())
    assert tf.matrix.normalized
    assert tf.duration_s > 4.0


def test_utterance_vectors_are_100_finite_values(tiny_corpus):
    records = load_manifest(tiny_corpus)
    tracks, errors = extract_tracks(track_keys(records))
    assert errors == {}
    vectors, failures = utterance_vectors(records, tracks)
    assert failures == {}
    assert len(vectors) == 2 * len(records)
    for v in vectors.values():
        assert v.values.shape == (100,)
        assert np.all(np.isfinite(v.values))


def test_missing_track_marks_pair_failed(tiny_corpus):
    records = load_manifest(tiny_corpus)
    tracks, _ = extract_tracks(track_keys(records)[:1])
    vectors, failures = utterance_vectors(records, tracks)
    assert set(failures) == {r.pair_id for r in records}
    assert vectors == {}
