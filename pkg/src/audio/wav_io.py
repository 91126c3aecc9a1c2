"""
:module: src.audio.wav_io
:synopsis: Decode / write RIFF-WAVE files and canonicalize them for analysis.

Only PCM16 and IEEE float32 payloads are accepted, mono or multi-channel.
Integer samples are scaled by 1/32768; multi-channel audio is averaged to mono
unless a channel is named. ``load_canonical`` additionally resamples to the
analysis rate (16 kHz by default) with linear interpolation.

Notes
-----
- Decoding is ``scipy.io.wavfile``; everything it cannot parse is reported
  as ``AudioFormatError(path, cause)``.
- All functions are pure given their inputs, safe to call from workers.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.io import wavfile

from src.models.audio import AudioBuffer
from src.validation.errors import AudioFormatError

logger = logging.getLogger(__name__)

PCM16_SCALE = 32768.0
CANONICAL_RATE = 16000


def load_wav(path: str | Path, channel: Optional[int] = None) -> AudioBuffer:
    """Decode a WAV file into a mono ``AudioBuffer`` at its native rate.

    Parameters
    ----------
    path : str or Path
        RIFF/WAVE file, PCM16 or float32.
    channel : int, optional
        Pick this 0-based channel instead of averaging all channels.

    Returns
    -------
    AudioBuffer
        Mono samples in [-1, 1].

    Raises
    ------
    AudioFormatError
        Missing/unreadable file, unsupported codec, zero-length audio, bad channel.
    """
    p = Path(path)
    try:
        rate, data = wavfile.read(p)
    except FileNotFoundError:
        raise AudioFormatError(str(p), "file not found") from None
    except (ValueError, OSError, EOFError) as exc:
        raise AudioFormatError(str(p), f"unreadable WAV ({exc})") from exc

    if data.dtype == np.int16:
        samples = data.astype(np.float64) / PCM16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
        if not np.all(np.isfinite(samples)):
            raise AudioFormatError(str(p), "float samples contain NaN/Inf")
    else:
        raise AudioFormatError(str(p), f"unsupported sample format {data.dtype} (need PCM16 or float32)")

    if samples.shape[0] == 0:
        raise AudioFormatError(str(p), "zero-length audio")

    if samples.ndim == 2:
        n_channels = samples.shape[1]
        if channel is not None:
            if not 0 <= channel < n_channels:
                raise AudioFormatError(str(p), f"channel {channel} requested but file has {n_channels}")
            samples = samples[:, channel]
        else:
            # mean over channels is symmetric, so channel order does not matter
            samples = samples.mean(axis=1)
    elif channel not in (None, 0):
        raise AudioFormatError(str(p), f"channel {channel} requested from a mono file")

    samples = np.clip(samples, -1.0, 1.0)
    return AudioBuffer(samples, int(rate), str(p))


def resample(buf: AudioBuffer, target_rate: int) -> AudioBuffer:
    """Linear-interpolation resampling to ``target_rate``.

    Output length is ``round(n * target / source)`` (at least one sample).
    Equal rates return the input buffer itself.
    """
    if target_rate <= 0:
        raise ValueError("target_rate must be > 0")
    if target_rate == buf.sample_rate:
        return buf
    n_out = max(1, int(round(buf.n_samples * target_rate / buf.sample_rate)))
    positions = np.arange(n_out) * (buf.sample_rate / target_rate)
    out = np.interp(positions, np.arange(buf.n_samples), buf.samples)
    return AudioBuffer(np.clip(out, -1.0, 1.0), target_rate, buf.source_path)


def load_canonical(path: str | Path, channel: Optional[int] = None,
                   rate: int = CANONICAL_RATE) -> AudioBuffer:
    """``load_wav`` followed by ``resample`` to the analysis rate."""
    buf = load_wav(path, channel)
    if buf.sample_rate != rate:
        logger.debug("resampling %s from %d Hz to %d Hz", path, buf.sample_rate, rate)
    return resample(buf, rate)


def write_wav(path: str | Path, samples, sample_rate: int, sample_format: str = "pcm16") -> Path:
    """Write samples (1-D mono or ``(n, channels)``) as PCM16 or float32 WAV.

    PCM16 quantization rounds to the nearest step of 1/32768 and saturates.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if sample_format == "pcm16":
        data = np.clip(np.round(arr * PCM16_SCALE), -32768, 32767).astype(np.int16)
    elif sample_format == "float32":
        data = arr.astype(np.float32)
    else:
        raise ValueError(f"unknown sample_format {sample_format!r}")
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    wavfile.write(p, int(sample_rate), data)
    return p
