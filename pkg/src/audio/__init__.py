"""
:module: src.audio.__init__
:synopsis: Re-exports for WAV decoding and resampling.
"""

from .wav_io import CANONICAL_RATE, load_canonical, load_wav, resample, write_wav

__all__ = ["CANONICAL_RATE", "load_canonical", "load_wav", "resample", "write_wav"]
