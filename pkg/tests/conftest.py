"""
:module: tests.conftest
:synopsis: Put the repo root on ``sys.path`` and share synthetic-signal fixtures.

Fixtures
--------
- ``tone``: factory for pure sine ``AudioBuffer`` objects.
- ``noise``: seeded white noise buffer.
- ``pulse_train``: factory for glottal-like impulse trains.
- ``tiny_corpus``: a rendered synthetic corpus (two tracks + manifest) in ``tmp_path``.
- ``small_forest``: a ``RunConfig`` with a cheap forest for protocol tests.
"""

import pathlib
import sys

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]

# root first so ``src`` resolves to this checkout
sys.path.insert(0, str(ROOT))

from src.config.settings import ForestConfig, RunConfig  # noqa: E402
from src.dataset.synthetic import synthesize_corpus  # noqa: E402
from src.models.audio import AudioBuffer  # noqa: E402

SR = 16000


@pytest.fixture
def tone():
    def make(freq_hz: float, duration_s: float = 1.0, amp: float = 0.5, sr: int = SR) -> AudioBuffer:
        t = np.arange(int(duration_s * sr)) / sr
        return AudioBuffer(amp * np.sin(2 * np.pi * freq_hz * t), sr)
    return make


@pytest.fixture
def noise():
    rng = np.random.default_rng(7)
    return AudioBuffer(np.clip(rng.normal(0.0, 0.2, SR), -1.0, 1.0), SR)


@pytest.fixture
def pulse_train():
    def make(f0_hz: float, duration_s: float = 1.0, amp: float = 0.9, sr: int = SR) -> AudioBuffer:
        x = np.zeros(int(duration_s * sr))
        idx = np.round(np.arange(0.0, x.size, sr / f0_hz)).astype(int)
        x[idx[idx < x.size]] = amp
        return AudioBuffer(x, sr)
    return make


@pytest.fixture
def tiny_corpus(tmp_path):
    """Manifest path of a 4-pair rendered corpus."""
    return synthesize_corpus(tmp_path / "corpus", n_pairs=4, seed=3)


@pytest.fixture
def small_forest():
    return RunConfig(manifest_path="unused.csv", knn_k=10,
                     forest=ForestConfig(n_trees=20, min_leaf=3, rng_seed=1))
