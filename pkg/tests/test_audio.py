"""
:module: tests.test_audio
:synopsis: Tests for WAV decoding, channel handling and resampling.

Notes
-----
- Files are written with ``write_wav`` (scipy) into pytest's ``tmp_path``.
"""

import numpy as np
import pytest
from scipy.io import wavfile

from src.audio import load_canonical, load_wav, resample, write_wav
from src.models import AudioBuffer
from src.validation import AudioFormatError


def test_pcm16_round_trip_within_one_step(tmp_path):
    x = 0.5 * np.sin(np.linspace(0, 20, 800))
    p = write_wav(tmp_path / "a.wav", x, 8000)
    buf = load_wav(p)
    assert buf.sample_rate == 8000
    assert buf.n_samples == 800
    assert np.max(np.abs(buf.samples - x)) <= 1.0 / 32768
    assert buf.source_path == str(p)


def test_float32_is_accepted(tmp_path):
    x = np.linspace(-0.9, 0.9, 100)
    buf = load_wav(write_wav(tmp_path / "f.wav", x, 16000, "float32"))
    assert np.allclose(buf.samples, x, atol=1e-7)


def test_stereo_downmix_and_channel_pick(tmp_path):
    """Default is the channel mean; a named channel is read as is."""
    left = np.full(200, 0.5)
    right = np.full(200, -0.25)
    p = write_wav(tmp_path / "s.wav", np.stack([left, right], axis=1), 16000)
    assert np.allclose(load_wav(p).samples, 0.125, atol=1e-4)
    assert np.allclose(load_wav(p, channel=1).samples, -0.25, atol=1e-4)
    with pytest.raises(AudioFormatError):
        load_wav(p, channel=2)


def test_unreadable_inputs_raise_audio_format_error(tmp_path):
    with pytest.raises(AudioFormatError) as info:
        load_wav(tmp_path / "missing.wav")
    assert "missing.wav" in str(info.value)

    junk = tmp_path / "junk.wav"
    junk.write_bytes(b"this is not a riff file at all")
    with pytest.raises(AudioFormatError):
        load_wav(junk)

    wide = tmp_path / "int32.wav"
    wavfile.write(wide, 16000, np.zeros(100, dtype=np.int32))
    with pytest.raises(AudioFormatError):
        load_wav(wide)


def test_resample_length_and_identity():
    buf = AudioBuffer(np.sin(np.linspace(0, 10, 8000)) * 0.5, 8000)
    up = resample(buf, 16000)
    assert up.sample_rate == 16000
    assert up.n_samples == 16000
    assert resample(buf, 8000) is buf
    with pytest.raises(ValueError):
        resample(buf, 0)


def test_load_canonical_resamples_to_16k(tmp_path):
    p = write_wav(tmp_path / "lo.wav", np.zeros(4410), 44100)
    buf = load_canonical(p)
    assert buf.sample_rate == 16000
    assert buf.n_samples == 1600
