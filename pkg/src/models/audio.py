"""
:module: src.models.audio
:synopsis: AudioBuffer entity: mono samples + rate + where they came from.

Notes
-----
- Samples are stored as a read-only float64 numpy array so buffers can be
  shared between workers without anyone mutating them.
- Construction validates the invariants (non-empty, finite, in [-1, 1],
  positive rate); decoding code is expected to clip before building one.
"""

from __future__ import annotations

import numpy as np

from src.validation.validators import is_finite_array, is_positive_int


class AudioBuffer:
    """
    Decoded mono audio.

    Parameters
    ----------
    samples : array-like
        Real amplitudes in [-1, 1].
    sample_rate : int
        Hz, strictly positive.
    source_path : str, optional
        File the samples were decoded from (``""`` for synthetic buffers).

    Attributes
    ----------
    samples : numpy.ndarray
        1-D float64, read-only.
    sample_rate : int
    source_path : str

    Raises
    ------
    ValueError
        Empty, non-finite or out-of-range samples, or a bad rate.
    """
    __slots__ = ("samples", "sample_rate", "source_path")

    def __init__(self, samples, sample_rate: int, source_path: str = "") -> None:
        arr = np.array(samples, dtype=np.float64).reshape(-1)
        if arr.size == 0:
            raise ValueError("AudioBuffer needs at least one sample.")
        if not is_finite_array(arr):
            raise ValueError("AudioBuffer samples must be finite.")
        if np.max(np.abs(arr)) > 1.0:
            raise ValueError("AudioBuffer samples must lie in [-1, 1].")
        if not is_positive_int(sample_rate):
            raise ValueError("sample_rate must be a positive integer.")
        arr.flags.writeable = False
        self.samples = arr
        self.sample_rate = int(sample_rate)
        self.source_path = str(source_path)

    @property
    def n_samples(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def scaled(self, gain: float) -> "AudioBuffer":
        """Copy with every sample multiplied by ``gain`` (must stay in range)."""
        return AudioBuffer(self.samples * gain, self.sample_rate, self.source_path)

    def __repr__(self) -> str:
        return f"AudioBuffer(n={self.n_samples}, rate={self.sample_rate}, src={self.source_path!r})"
