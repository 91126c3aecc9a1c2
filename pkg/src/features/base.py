"""
:module: src.features.base
:synopsis: The 10 per-frame base prosodic features of one track.

Formulas (all windows centered on the frame, half-widths from ``ExtractionConfig``):

- ``intensity``: frame log energy (dB).
- ``speaking_rate``: moving mean of spectral flux over +-300 ms.
- ``lengthening``: moving mean over +-150 ms of
  ``voicing_strength * max(0, p95(flux) - flux)``; high on sustained voiced stretches.
- ``creakiness``: share of frames in +-100 ms that are voiced below
  ``0.6 x`` the track's median f0, or whose chosen autocorrelation peak sits
  below 60 Hz with some periodicity.
- ``peak_disalignment``: seconds from the local intensity maximum to the local
  f0 maximum within +-300 ms (positive = late pitch peak), 0 without enough voicing.
- ``cpps``: smoothed cepstral peak prominence.
- ``pitch_highness`` / ``pitch_lowness``: distance of f0 above p50 (below)
  scaled by ``p90 - p50`` (``p50 - p10``), clamped to [0, 2], 0 when unvoiced.
- ``pitch_wideness``: local f0 range over +-300 ms scaled by ``p90 - p10``.
- ``pitch_narrowness``: ``max(0, 1 - wideness)`` where the +-300 ms window is
  at least half voiced, else 0.

Notes
-----
- Values are raw (not normalized); see ``normalize_per_track``.
- Moving means at the track edges average only the frames that exist.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import maximum_filter1d, minimum_filter1d, uniform_filter1d

from src.config.settings import ExtractionConfig
from src.dsp.cepstrum import cpps
from src.dsp.core import frame_log_energy, frame_signal, spectral_flux, stft_magnitudes
from src.dsp.pitch import autocorr_pitch
from src.models.audio import AudioBuffer
from src.models.features import BaseFeatureMatrix
from src.models.layout import FEATURE_NAMES
from src.models.signal import FrameGrid, PitchTrack

logger = logging.getLogger(__name__)


def centered_mean(x: np.ndarray, half: int) -> np.ndarray:
    """Mean of ``x[i-half : i+half+1]`` clipped to the valid range."""
    x = np.asarray(x, dtype=float)
    if half <= 0:
        return x.copy()
    size = 2 * half + 1
    total = uniform_filter1d(x, size=size, mode="constant", cval=0.0)
    count = uniform_filter1d(np.ones_like(x), size=size, mode="constant", cval=0.0)
    return total / count


def speaking_rate(flux: np.ndarray, config: ExtractionConfig) -> np.ndarray:
    return centered_mean(flux, config.frames_for_ms(config.rate_half_window_ms))


def lengthening(flux: np.ndarray, pitch: PitchTrack, config: ExtractionConfig) -> np.ndarray:
    ref = np.percentile(flux, config.lengthening_flux_percentile)
    steady = pitch.voicing_strength * np.maximum(0.0, ref - flux)
    return centered_mean(steady, config.frames_for_ms(config.lengthening_half_window_ms))


def creakiness(pitch: PitchTrack, config: ExtractionConfig) -> np.ndarray:
    voiced = pitch.voiced
    flags = (pitch.peak_frequency() < config.creak_max_hz) & (pitch.voicing_strength >= config.creak_min_strength)
    if voiced.any():
        median_f0 = np.median(pitch.f0[voiced])
        flags |= voiced & (pitch.f0 < config.creak_f0_ratio * median_f0)
    return centered_mean(flags.astype(float), config.frames_for_ms(config.creak_half_window_ms))


def pitch_percepts(pitch: PitchTrack, config: ExtractionConfig) -> dict[str, np.ndarray]:
    """Highness, lowness, wideness and narrowness from the track's f0 percentiles."""
    n = pitch.n_frames
    voiced = pitch.voiced
    if not voiced.any():
        return {name: np.zeros(n) for name in ("pitch_highness", "pitch_lowness",
                                               "pitch_wideness", "pitch_narrowness")}
    f0 = pitch.f0
    p10, p50, p90 = np.percentile(f0[voiced], [10, 50, 90])
    floor = config.min_pitch_spread_hz
    up, down, spread = max(p90 - p50, floor), max(p50 - p10, floor), max(p90 - p10, floor)

    highness = np.where(voiced, np.clip((f0 - p50) / up, 0.0, 2.0), 0.0)
    lowness = np.where(voiced, np.clip((p50 - f0) / down, 0.0, 2.0), 0.0)

    half = config.frames_for_ms(config.pitch_half_window_ms)
    size = 2 * half + 1
    hi = maximum_filter1d(np.where(voiced, f0, -np.inf), size=size, mode="constant", cval=-np.inf)
    lo = minimum_filter1d(np.where(voiced, f0, np.inf), size=size, mode="constant", cval=np.inf)
    has_voicing = np.isfinite(hi)
    wideness = np.where(has_voicing, (np.where(has_voicing, hi, 0.0) - np.where(has_voicing, lo, 0.0)) / spread, 0.0)

    enough = centered_mean(voiced.astype(float), half) >= config.min_voiced_fraction
    narrowness = np.where(enough, np.maximum(0.0, 1.0 - wideness), 0.0)
    return {
        "pitch_highness": highness,
        "pitch_lowness": lowness,
        "pitch_wideness": wideness,
        "pitch_narrowness": narrowness,
    }


def peak_disalignment(pitch: PitchTrack, intensity: np.ndarray, grid: FrameGrid,
                      config: ExtractionConfig) -> np.ndarray:
    """Signed offset (s) of the local f0 peak relative to the local intensity peak."""
    voiced = pitch.voiced
    if not voiced.any():
        return np.zeros(pitch.n_frames)
    half = config.frames_for_ms(config.pitch_half_window_ms)
    f0_win = sliding_window_view(np.pad(np.where(voiced, pitch.f0, -np.inf), half,
                                        constant_values=-np.inf), 2 * half + 1)
    int_win = sliding_window_view(np.pad(np.asarray(intensity, dtype=float), half,
                                         constant_values=-np.inf), 2 * half + 1)
    offset = (np.argmax(f0_win, axis=1) - np.argmax(int_win, axis=1)) * grid.hop_s
    enough = centered_mean(voiced.astype(float), half) >= config.min_voiced_fraction
    return np.where(enough, offset, 0.0)


def base_features(buf: AudioBuffer, config: ExtractionConfig | None = None) -> BaseFeatureMatrix:
    """Raw 10 x n_frames feature matrix of a canonical-rate buffer.

    Raises
    ------
    SignalTooShortError
        Buffer shorter than one frame.
    """
    cfg = config or ExtractionConfig()
    grid = frame_signal(buf, cfg.frame_ms, cfg.hop_ms)
    intensity = frame_log_energy(buf, grid, cfg.energy_floor)
    flux = spectral_flux(stft_magnitudes(buf, grid))
    pitch = autocorr_pitch(buf, grid, cfg)
    if not pitch.voiced.any():
        logger.warning("%s: no voiced frames, pitch features and peak disalignment set to 0",
                       buf.source_path or "buffer")

    rows = {
        "intensity": intensity,
        "lengthening": lengthening(flux, pitch, cfg),
        "creakiness": creakiness(pitch, cfg),
        "speaking_rate": speaking_rate(flux, cfg),
        "peak_disalignment": peak_disalignment(pitch, intensity, grid, cfg),
        "cpps": cpps(buf, grid, cfg),
        **pitch_percepts(pitch, cfg),
    }
    return BaseFeatureMatrix(np.vstack([rows[name] for name in FEATURE_NAMES]), grid)
