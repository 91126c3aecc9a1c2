"""
:module: src.dsp.cepstrum
:synopsis: Smoothed cepstral peak prominence (CPPS) per frame.

Per frame: Hann-windowed ``cpps_window_ms`` analysis window centered on the
frame, log magnitude spectrum in dB, real cepstrum, power cepstrum in dB.
The cepstra are smoothed over time (``cpps_time_smooth`` frames) and then over
quefrency (``cpps_quefrency_smooth`` bins). A least-squares line is fitted over
quefrencies ``1/cpps_quefrency_max_hz .. 1/cpps_quefrency_min_hz`` and CPPS is
the peak minus the line at the peak quefrency, in dB.

Notes
-----
- Only the quefrency bins needed by the peak search (plus the smoothing
  margin) are kept per frame, so memory stays linear in the track length.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft
from scipy.ndimage import uniform_filter1d

from src.config.settings import ExtractionConfig
from src.models.audio import AudioBuffer
from src.models.signal import FrameGrid
from .core import block_ranges, centered_windows, hann_window

_LOG_FLOOR = 1e-10


def quefrency_band(sample_rate: int, config: ExtractionConfig) -> tuple[int, int]:
    """Inclusive cepstral bin range of the peak search."""
    lo = int(np.ceil(sample_rate / config.cpps_quefrency_max_hz))
    hi = int(np.floor(sample_rate / config.cpps_quefrency_min_hz))
    return lo, hi


def smoothed_cepstrum(buf: AudioBuffer, grid: FrameGrid,
                      config: ExtractionConfig | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Time- and quefrency-smoothed power cepstrum (dB) of every frame.

    Returns
    -------
    (cepstra, quefrency_s)
        ``cepstra`` has shape ``(n_frames, n_bins)`` covering quefrency bins
        ``0..n_bins-1``; ``quefrency_s`` gives each bin in seconds.
    """
    cfg = config or ExtractionConfig()
    sr = buf.sample_rate
    width = int(round(cfg.cpps_window_ms * sr / 1000.0))
    _, q_hi = quefrency_band(sr, cfg)
    n_bins = min(width // 2, q_hi + cfg.cpps_quefrency_smooth + 1)
    win = hann_window(width)

    raw = np.empty((grid.n_frames, n_bins))
    for lo, hi in block_ranges(grid.n_frames):
        frames = centered_windows(buf.samples, grid, width, lo, hi) * win
        log_mag = 20.0 * np.log10(np.abs(sfft.rfft(frames, width, axis=1)) + _LOG_FLOOR)
        ceps = sfft.irfft(log_mag, width, axis=1)[:, :n_bins]
        raw[lo:hi] = 10.0 * np.log10(ceps * ceps + _LOG_FLOOR)

    smooth = uniform_filter1d(raw, size=max(1, cfg.cpps_time_smooth), axis=0, mode="nearest")
    smooth = uniform_filter1d(smooth, size=max(1, cfg.cpps_quefrency_smooth), axis=1, mode="nearest")
    return smooth, np.arange(n_bins) / sr


def cpps(buf: AudioBuffer, grid: FrameGrid, config: ExtractionConfig | None = None) -> np.ndarray:
    """CPPS in dB for every frame of ``grid``."""
    cfg = config or ExtractionConfig()
    ceps, quef = smoothed_cepstrum(buf, grid, cfg)
    q_lo, q_hi = quefrency_band(buf.sample_rate, cfg)
    band = ceps[:, q_lo:q_hi + 1]
    q = quef[q_lo:q_hi + 1]
    # one least-squares line per frame (columns of band.T)
    slope, intercept = np.polyfit(q, band.T, 1)
    peak = np.argmax(band, axis=1)
    rows = np.arange(band.shape[0])
    return band[rows, peak] - (slope * q[peak] + intercept)


def cepstral_peak_quefrency(buf: AudioBuffer, grid: FrameGrid,
                            config: ExtractionConfig | None = None) -> np.ndarray:
    """Quefrency (seconds) of the smoothed cepstral peak inside the search band, per frame."""
    cfg = config or ExtractionConfig()
    ceps, quef = smoothed_cepstrum(buf, grid, cfg)
    q_lo, q_hi = quefrency_band(buf.sample_rate, cfg)
    return quef[q_lo + np.argmax(ceps[:, q_lo:q_hi + 1], axis=1)]
