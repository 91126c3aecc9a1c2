"""
:module: src.dsp.core
:synopsis: Framing, Hann windowing, magnitude spectra, log energy and spectral flux.

Every per-frame quantity of a track is computed on one ``FrameGrid``
(32 ms frames, 10 ms hop by default) so all outputs have exactly
``n_frames`` entries.

Notes
-----
- No pre-emphasis anywhere.
- Long tracks are processed in blocks of frames (``BLOCK_FRAMES``) to keep
  the frame matrices small; results do not depend on the block size.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import fft as sfft
from scipy.signal import get_window

from src.models.audio import AudioBuffer
from src.models.signal import FrameGrid
from src.validation.errors import SignalTooShortError

BLOCK_FRAMES = 4096
ENERGY_FLOOR = 1e-10


def frame_signal(buf: AudioBuffer, frame_ms: float = 32.0, hop_ms: float = 10.0) -> FrameGrid:
    """Frame grid for ``buf``: ``floor((n - frame_length)/hop) + 1`` frames.

    Raises
    ------
    ValueError
        Unless ``frame_ms >= hop_ms > 0``.
    SignalTooShortError
        Buffer shorter than one frame.
    """
    if not (frame_ms >= hop_ms > 0):
        raise ValueError("need frame_ms >= hop_ms > 0")
    frame_length = int(round(frame_ms * buf.sample_rate / 1000.0))
    hop = max(1, int(round(hop_ms * buf.sample_rate / 1000.0)))
    if buf.n_samples < frame_length:
        raise SignalTooShortError(
            f"{buf.source_path or 'buffer'}: {buf.n_samples} samples is shorter than one "
            f"{frame_length}-sample frame")
    return FrameGrid.for_length(buf.n_samples, frame_length, hop, buf.sample_rate)


def block_ranges(n_frames: int, block: int = BLOCK_FRAMES) -> Iterator[tuple[int, int]]:
    for lo in range(0, n_frames, block):
        yield lo, min(n_frames, lo + block)


def frame_matrix(samples: np.ndarray, grid: FrameGrid, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Frames ``lo..hi`` of the grid as a ``(hi-lo, frame_length)`` copy."""
    hi = grid.n_frames if hi is None else hi
    view = sliding_window_view(np.asarray(samples, dtype=float), grid.frame_length)
    return np.array(view[np.arange(lo, hi) * grid.hop])


def centered_windows(samples: np.ndarray, grid: FrameGrid, width: int,
                     lo: int = 0, hi: int | None = None) -> np.ndarray:
    """``width``-sample windows centered on frames ``lo..hi``, zero padded at the edges.

    Window ``i`` starts at ``i*hop + (frame_length - width)//2`` in signal samples.
    """
    hi = grid.n_frames if hi is None else hi
    samples = np.asarray(samples, dtype=float)
    offset = (grid.frame_length - width) // 2
    pad_left = max(0, -offset)
    last_end = (grid.n_frames - 1) * grid.hop + offset + width
    pad_right = max(0, last_end - samples.size)
    padded = np.pad(samples, (pad_left, pad_right))
    starts = np.arange(lo, hi) * grid.hop + offset + pad_left
    return np.array(sliding_window_view(padded, width)[starts])


def hann_window(n: int) -> np.ndarray:
    """Periodic Hann window (the FFT-analysis flavour)."""
    return get_window("hann", n, fftbins=True)


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


def magnitude_spectrum(frame: np.ndarray) -> np.ndarray:
    """``|rfft|`` of an already windowed frame, zero padded to a power of two.

    Output has ``nfft/2 + 1`` bins; Parseval holds for the one-sided spectrum.
    """
    frame = np.asarray(frame, dtype=float)
    return np.abs(sfft.rfft(frame, next_pow2(frame.size)))


def stft_magnitudes(buf: AudioBuffer, grid: FrameGrid) -> np.ndarray:
    """Hann-windowed magnitude spectra of every frame, shape ``(n_frames, bins)``."""
    nfft = next_pow2(grid.frame_length)
    win = hann_window(grid.frame_length)
    out = np.empty((grid.n_frames, nfft // 2 + 1))
    for lo, hi in block_ranges(grid.n_frames):
        frames = frame_matrix(buf.samples, grid, lo, hi) * win
        out[lo:hi] = np.abs(sfft.rfft(frames, nfft, axis=1))
    return out


def log_energy(frame: np.ndarray, floor: float = ENERGY_FLOOR) -> float:
    """``10*log10(mean square + floor)`` in dB (silence gives -100 dB)."""
    frame = np.asarray(frame, dtype=float)
    return float(10.0 * np.log10(np.mean(frame * frame) + floor))


def frame_log_energy(buf: AudioBuffer, grid: FrameGrid, floor: float = ENERGY_FLOOR) -> np.ndarray:
    """``log_energy`` of every (unwindowed) frame."""
    out = np.empty(grid.n_frames)
    for lo, hi in block_ranges(grid.n_frames):
        frames = frame_matrix(buf.samples, grid, lo, hi)
        out[lo:hi] = 10.0 * np.log10(np.mean(frames * frames, axis=1) + floor)
    return out


def spectral_flux(spectra: np.ndarray) -> np.ndarray:
    """Half-wave rectified change between consecutive L2-normalized spectra.

    ``flux[0] = 0``; all-zero spectra stay zero after normalization, so
    silence gives zero flux. Invariant to a global gain.
    """
    spectra = np.atleast_2d(np.asarray(spectra, dtype=float))
    norms = np.linalg.norm(spectra, axis=1, keepdims=True)
    unit = spectra / np.where(norms > 0, norms, 1.0)
    flux = np.zeros(spectra.shape[0])
    if spectra.shape[0] > 1:
        flux[1:] = np.sum(np.maximum(0.0, np.diff(unit, axis=0)), axis=1)
    return flux
