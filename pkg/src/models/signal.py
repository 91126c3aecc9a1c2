"""
:module: src.models.signal
:synopsis: Frame-level time base (FrameGrid) and pitch contour (PitchTrack).

A FrameGrid is the shared clock for every per-frame feature of a track:
frame ``i`` covers samples ``[i*hop, i*hop + frame_length)``.
"""

from __future__ import annotations

import numpy as np

from src.validation.validators import is_finite_array, is_positive_int


class FrameGrid:
    """
    Framing of one buffer.

    Parameters
    ----------
    frame_length : int
        Samples per frame.
    hop : int
        Samples between frame starts.
    n_frames : int
        Number of complete frames (>= 1).
    sample_rate : int
        Hz.
    """
    __slots__ = ("frame_length", "hop", "n_frames", "sample_rate")

    def __init__(self, frame_length: int, hop: int, n_frames: int, sample_rate: int) -> None:
        for name, v in (("frame_length", frame_length), ("hop", hop),
                        ("n_frames", n_frames), ("sample_rate", sample_rate)):
            if not is_positive_int(v):
                raise ValueError(f"{name} must be a positive integer.")
        if hop > frame_length:
            raise ValueError("hop must not exceed frame_length.")
        self.frame_length = int(frame_length)
        self.hop = int(hop)
        self.n_frames = int(n_frames)
        self.sample_rate = int(sample_rate)

    @classmethod
    def for_length(cls, n_samples: int, frame_length: int, hop: int, sample_rate: int) -> "FrameGrid":
        """Grid with ``floor((n - frame_length)/hop) + 1`` frames."""
        if n_samples < frame_length:
            raise ValueError("signal shorter than one frame.")
        return cls(frame_length, hop, (n_samples - frame_length) // hop + 1, sample_rate)

    def frame_starts(self) -> np.ndarray:
        return np.arange(self.n_frames) * self.hop

    def center_samples(self) -> np.ndarray:
        """Sample index of each frame's center (may be fractional)."""
        return self.frame_starts() + self.frame_length / 2.0

    def center_times(self) -> np.ndarray:
        return self.center_samples() / self.sample_rate

    @property
    def hop_s(self) -> float:
        return self.hop / self.sample_rate

    def to_dict(self) -> dict:
        return {"frame_length": self.frame_length, "hop": self.hop,
                "n_frames": self.n_frames, "sample_rate": self.sample_rate}

    @classmethod
    def from_dict(cls, d: dict) -> "FrameGrid":
        return cls(d["frame_length"], d["hop"], d["n_frames"], d["sample_rate"])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrameGrid) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return (f"FrameGrid(frame_length={self.frame_length}, hop={self.hop}, "
                f"n_frames={self.n_frames}, sample_rate={self.sample_rate})")


class PitchTrack:
    """
    Per-frame pitch estimate.

    Parameters
    ----------
    f0 : array-like
        Hz on voiced frames, ``0.0`` (the unvoiced marker) elsewhere.
    voicing_strength : array-like
        Peak normalized autocorrelation clamped to [0, 1].
    peak_lag : array-like
        Refined lag (samples) of the chosen autocorrelation peak, voiced or not;
        used by the creak detector.
    sample_rate : int
        Rate the lags refer to.

    Notes
    -----
    Voiced frames are exactly those with ``f0 > 0``.
    """
    __slots__ = ("f0", "voicing_strength", "peak_lag", "sample_rate")

    def __init__(self, f0, voicing_strength, peak_lag, sample_rate: int) -> None:
        f0 = np.asarray(f0, dtype=float)
        vs = np.asarray(voicing_strength, dtype=float)
        lag = np.asarray(peak_lag, dtype=float)
        if not (f0.shape == vs.shape == lag.shape) or f0.ndim != 1:
            raise ValueError("PitchTrack arrays must be 1-D and aligned.")
        if not (is_finite_array(f0) and is_finite_array(vs) and is_finite_array(lag)):
            raise ValueError("PitchTrack values must be finite.")
        self.f0 = f0
        self.voicing_strength = vs
        self.peak_lag = lag
        self.sample_rate = int(sample_rate)

    @property
    def voiced(self) -> np.ndarray:
        return self.f0 > 0

    @property
    def n_frames(self) -> int:
        return int(self.f0.size)

    def peak_frequency(self) -> np.ndarray:
        """Frequency implied by ``peak_lag`` on every frame (voiced or not)."""
        return self.sample_rate / np.maximum(self.peak_lag, 1.0)
