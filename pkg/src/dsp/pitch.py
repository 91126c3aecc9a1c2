"""
:module: src.dsp.pitch
:synopsis: Normalized-autocorrelation pitch tracker.

For each frame a ``pitch_window_ms`` window (40 ms by default, enough for two
periods of 50 Hz) centered on the frame is mean-removed and its normalized
autocorrelation

    r(L) = sum x[n] x[n+L] / sqrt(sum_{n<W-L} x[n]^2 * sum_{n>=L} x[n]^2)

is evaluated for lags covering ``f0_min..f0_max``. Among the local peaks the
shortest-lag one scoring at least ``octave_factor`` times the best score is
taken (suppresses octave-down errors), then refined by parabolic
interpolation. The frame is voiced when that peak reaches ``voicing_threshold``.

Notes
-----
- Not a YIN/RAPT substitute; it only needs to be stable on dialog-ish audio.
- Cross terms come from one FFT per window; the energy terms from cumulative sums.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

from src.config.settings import ExtractionConfig
from src.models.audio import AudioBuffer
from src.models.signal import FrameGrid, PitchTrack
from .core import block_ranges, centered_windows, next_pow2

_DENOM_FLOOR = 1e-12


def lag_range(sample_rate: int, f0_min: float, f0_max: float) -> tuple[int, int]:
    """Inclusive integer lag search range for ``f0_min..f0_max``."""
    return int(np.floor(sample_rate / f0_max)), int(np.ceil(sample_rate / f0_min))


def normalized_autocorrelation(windows: np.ndarray, max_lag: int) -> np.ndarray:
    """``r(L)`` for ``L = 0..max_lag`` of each row of ``windows`` (rows are mean-removed here)."""
    x = windows - windows.mean(axis=1, keepdims=True)
    w = x.shape[1]
    if max_lag >= w:
        raise ValueError("max_lag must be shorter than the analysis window")
    nfft = next_pow2(2 * w)
    spec = sfft.rfft(x, nfft, axis=1)
    ac = sfft.irfft(spec * np.conj(spec), nfft, axis=1)[:, :max_lag + 1]
    cs = np.concatenate([np.zeros((x.shape[0], 1)), np.cumsum(x * x, axis=1)], axis=1)
    lags = np.arange(max_lag + 1)
    head = cs[:, w - lags]                 # sum_{n < W-L} x[n]^2
    tail = cs[:, [w]] - cs[:, lags]        # sum_{n >= L} x[n]^2
    denom = np.sqrt(np.maximum(head * tail, 0.0))
    return np.where(denom > _DENOM_FLOOR, ac / np.maximum(denom, _DENOM_FLOOR), 0.0)


def pick_peaks(r: np.ndarray, min_lag: int, max_lag: int, octave_factor: float) -> tuple[np.ndarray, np.ndarray]:
    """Chosen (refined lag, peak score) per row of an autocorrelation matrix.

    ``r`` must cover lags ``0..max_lag + 1`` so both neighbours of every
    candidate lag exist.
    """
    band = r[:, min_lag:max_lag + 1]
    prev = r[:, min_lag - 1:max_lag]
    nxt = r[:, min_lag + 1:max_lag + 2]
    is_peak = (band >= prev) & (band > nxt)
    best = band.max(axis=1)
    ok = is_peak & (band > 0) & (band >= octave_factor * best[:, None])
    has = ok.any(axis=1)
    chosen = np.where(has, np.argmax(ok, axis=1), np.argmax(band, axis=1))

    rows = np.arange(r.shape[0])
    lag = chosen + min_lag
    a = r[rows, lag - 1]
    b = r[rows, lag]
    c = r[rows, lag + 1]
    curvature = a - 2.0 * b + c
    shift = np.where(curvature < 0, 0.5 * (a - c) / np.where(curvature < 0, curvature, -1.0), 0.0)
    shift = np.clip(shift, -0.5, 0.5)
    refined = np.clip(lag + shift, min_lag, max_lag)
    return refined, b


def autocorr_pitch(buf: AudioBuffer, grid: FrameGrid, config: ExtractionConfig | None = None) -> PitchTrack:
    """Per-frame f0 (Hz, 0 when unvoiced) and voicing strength for a canonical-rate buffer."""
    cfg = config or ExtractionConfig()
    sr = buf.sample_rate
    width = int(round(cfg.pitch_window_ms * sr / 1000.0))
    min_lag, max_lag = lag_range(sr, cfg.f0_min, cfg.f0_max)
    min_lag = max(min_lag, 1)
    if max_lag + 1 >= width:
        raise ValueError("pitch window too short for f0_min")

    f0 = np.zeros(grid.n_frames)
    strength = np.zeros(grid.n_frames)
    peak_lag = np.zeros(grid.n_frames)
    for lo, hi in block_ranges(grid.n_frames):
        windows = centered_windows(buf.samples, grid, width, lo, hi)
        r = normalized_autocorrelation(windows, max_lag + 1)
        lag, score = pick_peaks(r, min_lag, max_lag, cfg.octave_factor)
        voiced = score >= cfg.voicing_threshold
        f0[lo:hi] = np.where(voiced, np.clip(sr / lag, cfg.f0_min, cfg.f0_max), 0.0)
        strength[lo:hi] = np.clip(score, 0.0, 1.0)
        peak_lag[lo:hi] = lag
    return PitchTrack(f0, strength, peak_lag, sr)
