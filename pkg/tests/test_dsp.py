"""
:module: tests.test_dsp
:synopsis: Oracle tests for framing, spectra, spectral flux, the pitch tracker and CPPS.

Notes
-----
- Signals come from the ``tone`` / ``noise`` / ``pulse_train`` fixtures.
- Pitch accuracy is checked on voiced frames only (2 Hz tolerance).
"""

import numpy as np
import pytest

from src.config import ExtractionConfig
from src.dsp import (
    autocorr_pitch, cepstral_peak_quefrency, cpps, frame_log_energy, frame_signal, log_energy,
    magnitude_spectrum, spectral_flux, stft_magnitudes,
)
from src.dsp.cepstrum import quefrency_band
from src.dsp.pitch import lag_range, normalized_autocorrelation
from src.models import AudioBuffer
from src.validation import SignalTooShortError


def test_frame_count_formula(tone):
    grid = frame_signal(tone(200.0, 1.0))
    assert (grid.frame_length, grid.hop) == (512, 160)
    assert grid.n_frames == (16000 - 512) // 160 + 1
    assert frame_signal(tone(200.0, 0.4)).n_frames == 37


def test_too_short_buffer_raises():
    with pytest.raises(SignalTooShortError):
        frame_signal(AudioBuffer(np.zeros(100), 16000))
    with pytest.raises(ValueError):
        frame_signal(AudioBuffer(np.zeros(1000), 16000), frame_ms=5.0, hop_ms=10.0)


def test_log_energy_of_silence_is_floor():
    assert log_energy(np.zeros(512)) == pytest.approx(-100.0)
    assert log_energy(np.ones(512)) == pytest.approx(0.0, abs=1e-6)


def test_magnitude_spectrum_pads_to_power_of_two():
    assert magnitude_spectrum(np.ones(400)).shape == (257,)
    assert magnitude_spectrum(np.ones(512)).shape == (257,)


def test_sine_peaks_at_its_bin_and_impulse_is_flat():
    t = np.arange(512) / 16000
    assert int(np.argmax(magnitude_spectrum(np.sin(2 * np.pi * 1000.0 * t)))) == 32
    impulse = np.zeros(512)
    impulse[0] = 1.0
    assert np.allclose(magnitude_spectrum(impulse), 1.0, atol=1e-12)


def test_log_energy_of_unit_sine_and_square():
    t = np.arange(512) / 16000
    assert log_energy(np.sin(2 * np.pi * 1000.0 * t)) == pytest.approx(-3.0103, abs=1e-3)
    assert log_energy(np.where(np.arange(512) % 2, 1.0, -1.0)) == pytest.approx(0.0, abs=1e-6)


def test_spectral_flux_is_gain_invariant(noise):
    grid = frame_signal(noise)
    loud = spectral_flux(stft_magnitudes(noise, grid))
    quiet = spectral_flux(stft_magnitudes(noise.scaled(0.25), grid))
    assert loud[0] == 0.0
    assert np.max(np.abs(loud - quiet)) <= 1e-9
    assert np.all(loud >= 0)


def test_spectral_flux_rises_at_every_tone_change(tone):
    """0.1 s blocks alternating 500 Hz and 2 kHz."""
    block = 1600
    low, high = tone(500.0, 0.1).samples, tone(2000.0, 0.1).samples
    buf = AudioBuffer(np.concatenate([low, high, low, high, low]), 16000)
    grid = frame_signal(buf)
    flux = spectral_flux(stft_magnitudes(buf, grid))
    for switch in range(block, 5 * block, block):
        # first frame reaching past the change
        i = (switch - grid.frame_length) // grid.hop + 1
        assert flux[i] > 0.0
        assert flux[i] > 10 * flux[i - 1]


def test_spectral_flux_of_silence_is_zero():
    silent = AudioBuffer(np.zeros(4000), 16000)
    grid = frame_signal(silent)
    assert np.all(spectral_flux(stft_magnitudes(silent, grid)) == 0.0)
    assert spectral_flux(np.ones((1, 10))).tolist() == [0.0]


def test_frame_log_energy_matches_per_frame_formula(noise):
    grid = frame_signal(noise)
    e = frame_log_energy(noise, grid)
    i = 17
    frame = noise.samples[i * grid.hop:i * grid.hop + grid.frame_length]
    assert e[i] == pytest.approx(log_energy(frame), abs=1e-9)


def test_lag_and_quefrency_ranges():
    assert lag_range(16000, 50.0, 500.0) == (32, 320)
    assert quefrency_band(16000, ExtractionConfig()) == (54, 266)


def test_normalized_autocorrelation_is_one_at_lag_zero(noise):
    w = noise.samples[:640].reshape(1, -1)
    r = normalized_autocorrelation(w, 100)
    assert r[0, 0] == pytest.approx(1.0)
    assert np.all(np.abs(r) <= 1.0 + 1e-9)


@pytest.mark.parametrize("freq", [100.0, 150.0, 220.0, 330.0])
def test_pitch_of_pure_tones(tone, freq):
    """>= 95% of voiced frames within 2 Hz, and the tone is mostly voiced."""
    buf = tone(freq, 1.0)
    track = autocorr_pitch(buf, frame_signal(buf))
    voiced = track.voiced
    assert voiced.mean() >= 0.9
    err = np.abs(track.f0[voiced] - freq)
    assert np.mean(err <= 2.0) >= 0.95
    assert np.all((track.voicing_strength >= 0) & (track.voicing_strength <= 1))


def test_pitch_of_noise_and_silence_is_mostly_unvoiced(noise):
    assert autocorr_pitch(noise, frame_signal(noise)).voiced.mean() <= 0.1
    silent = AudioBuffer(np.zeros(8000), 16000)
    track = autocorr_pitch(silent, frame_signal(silent))
    assert not track.voiced.any()
    assert np.all(track.f0 == 0.0)


def test_cpps_pulse_train_beats_white_noise(pulse_train, noise):
    pulses = pulse_train(150.0)
    p = cpps(pulses, frame_signal(pulses))
    n = cpps(noise, frame_signal(noise))
    assert p.shape == (frame_signal(pulses).n_frames,)
    assert np.all(np.isfinite(p))
    assert np.median(p) > np.median(n)


def test_cepstral_peak_sits_at_the_pulse_period(pulse_train):
    pulses = pulse_train(125.0)
    q = cepstral_peak_quefrency(pulses, frame_signal(pulses))
    mid = q[len(q) // 4:3 * len(q) // 4]
    assert np.median(mid) == pytest.approx(1 / 125.0, abs=3 / 16000)
