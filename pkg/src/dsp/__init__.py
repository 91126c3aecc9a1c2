"""
:module: src.dsp.__init__
:synopsis: Re-exports for the frame-level signal primitives.
"""

from .cepstrum import cepstral_peak_quefrency, cpps, smoothed_cepstrum
from .core import (
    frame_log_energy, frame_matrix, frame_signal, hann_window, log_energy,
    magnitude_spectrum, spectral_flux, stft_magnitudes,
)
from .pitch import autocorr_pitch

__all__ = [
    "autocorr_pitch",
    "cepstral_peak_quefrency",
    "cpps",
    "frame_log_energy",
    "frame_matrix",
    "frame_signal",
    "hann_window",
    "log_energy",
    "magnitude_spectrum",
    "smoothed_cepstrum",
    "spectral_flux",
    "stft_magnitudes",
]
