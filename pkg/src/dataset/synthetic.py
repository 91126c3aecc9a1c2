"""
:module: src.dataset.synthetic
:synopsis: Synthetic corpora with a planted judgment model, for protocol checks and demos.

Both generators plant the same judgment model: similarity rises steeply
(saturating) with the signed speaking-rate difference between seed and
re-enactment, plus a weaker pitch-height term and rating noise::

    judgment = 3 + rate_weight * tanh(rate_gain * d_rate)
                 + pitch_weight * tanh(pitch_gain * d_pitch) + noise

clipped to [1, 5].

- ``synthetic_delta_dataset`` draws the 100-dim deltas directly (fast).
- ``synthesize_corpus`` renders audio: a seed track and a re-enactment track
  of harmonic "syllable" bursts, plus the manifest pointing into them.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from src.audio.wav_io import CANONICAL_RATE, write_wav
from src.models.layout import N_DIMS, N_WINDOWS, dim_index
from src.models.pairs import PairRecord, UtteranceSpan
from .deltas import DeltaDataset
from .manifest import write_manifest

logger = logging.getLogger(__name__)

RATE_WEIGHT = 1.8
RATE_GAIN = 6.0
PITCH_WEIGHT = 0.4
PITCH_GAIN = 3.0


def planted_judgment(d_rate: np.ndarray, d_pitch: np.ndarray, noise: np.ndarray,
                     rate_weight: float = RATE_WEIGHT, pitch_weight: float = PITCH_WEIGHT) -> np.ndarray:
    j = (3.0 + rate_weight * np.tanh(RATE_GAIN * d_rate)
         + pitch_weight * np.tanh(PITCH_GAIN * d_pitch) + noise)
    return np.clip(j, 1.0, 5.0)


def _session_labels(n: int) -> list[str]:
    return [str(1 + i % 2) for i in range(n)]


def synthetic_delta_dataset(n_pairs: int = 300, seed: int = 0, delta_noise: float = 0.2,
                            judgment_noise: float = 0.2, signal_windows: Optional[Sequence[int]] = None,
                            rate_weight: float = RATE_WEIGHT, pitch_weight: float = PITCH_WEIGHT,
                            mode: str = "signed") -> DeltaDataset:
    """Feature-space corpus: signal in the speaking-rate (and weakly pitch-highness) dims.

    Parameters
    ----------
    n_pairs : int
        Number of pairs; sessions alternate ``1``/``2``.
    seed : int
        Generator seed.
    delta_noise : float
        Per-dimension noise sd added to every delta coordinate.
    judgment_noise : float
        Rating noise sd.
    signal_windows : sequence of int, optional
        Windows carrying the planted differences (default: all ten).
    rate_weight, pitch_weight : float
        Weights of the two judgment terms (``rate_weight=0`` gives all-noise targets
        when ``pitch_weight`` is 0 too).
    """
    rng = np.random.default_rng(seed)
    windows = list(range(N_WINDOWS)) if signal_windows is None else sorted(set(signal_windows))
    rate_dims = [dim_index("speaking_rate", w) for w in windows]
    pitch_dims = [dim_index("pitch_highness", w) for w in windows]

    d_rate = rng.uniform(-1.0, 1.0, n_pairs)
    d_pitch = rng.uniform(-1.0, 1.0, n_pairs)
    planted = np.zeros((n_pairs, N_DIMS))
    planted[:, rate_dims] = d_rate[:, None]
    planted[:, pitch_dims] = d_pitch[:, None]
    delta = planted + rng.normal(0.0, delta_noise, (n_pairs, N_DIMS))
    seeds = rng.normal(0.0, 1.0, (n_pairs, N_DIMS))
    reens = seeds - delta
    y = planted_judgment(d_rate, d_pitch, rng.normal(0.0, judgment_noise, n_pairs),
                         rate_weight, pitch_weight)
    ids = [f"p{i:04d}" for i in range(n_pairs)]
    return DeltaDataset(ids, seeds, reens, y, _session_labels(n_pairs), ["synth"] * n_pairs, mode)


def render_utterance(rng: np.random.Generator, rate_sps: float, f0_hz: float,
                     duration_s: float, sample_rate: int = CANONICAL_RATE) -> np.ndarray:
    """Harmonic syllable bursts at ``rate_sps`` syllables/s around ``f0_hz``.

    Each syllable is 70% voiced (5 harmonics, Hann envelope, slight f0 fall)
    and 30% near-silence.
    """
    n = int(round(duration_s * sample_rate))
    n_syll = max(1, int(round(rate_sps * duration_s)))
    bounds = np.linspace(0, n, n_syll + 1).astype(int)
    out = rng.normal(0.0, 1e-3, n)
    for a, b in zip(bounds[:-1], bounds[1:]):
        voiced = int(0.7 * (b - a))
        if voiced < 8:
            continue
        contour = f0_hz * np.linspace(1.05, 0.95, voiced) * (1.0 + rng.normal(0.0, 0.01))
        phase = 2.0 * np.pi * np.cumsum(contour) / sample_rate
        tone = sum(np.sin(h * phase) / h for h in range(1, 6))
        out[a:a + voiced] += 0.25 * np.hanning(voiced) * tone
    return np.clip(out, -0.99, 0.99)


def synthesize_corpus(out_dir: str | Path, n_pairs: int = 40, seed: int = 0,
                      judgment_noise: float = 0.2, language: str = "synth",
                      gap_s: float = 0.3) -> Path:
    """Render a seed track, a re-enactment track and ``manifest.csv`` under ``out_dir``.

    Utterance ``i`` of the seed track and utterance ``i`` of the re-enactment
    track form pair ``i``. Returns the manifest path.
    """
    rng = np.random.default_rng(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sr = CANONICAL_RATE
    gap = np.zeros(int(gap_s * sr))

    seed_parts: list[np.ndarray] = []
    reen_parts: list[np.ndarray] = []
    records: list[PairRecord] = []
    seed_t = reen_t = gap_s
    seed_parts.append(gap)
    reen_parts.append(gap)
    for i in range(n_pairs):
        base_rate = rng.uniform(3.0, 6.0)
        base_f0 = rng.uniform(110.0, 220.0)
        d_rate = rng.uniform(-1.0, 1.0)
        d_pitch = rng.uniform(-1.0, 1.0)
        dur_s = rng.uniform(1.0, 1.4)
        dur_r = rng.uniform(1.0, 1.4)
        seed_audio = render_utterance(rng, base_rate * np.exp(0.35 * d_rate), base_f0 * np.exp(0.15 * d_pitch), dur_s, sr)
        reen_audio = render_utterance(rng, base_rate * np.exp(-0.35 * d_rate), base_f0 * np.exp(-0.15 * d_pitch), dur_r, sr)
        judgment = float(planted_judgment(np.array([d_rate]), np.array([d_pitch]),
                                          rng.normal(0.0, judgment_noise, 1))[0])

        seed_span = UtteranceSpan(str(out / "seed.wav"), seed_t, seed_t + seed_audio.size / sr)
        reen_span = UtteranceSpan(str(out / "reen.wav"), reen_t, reen_t + reen_audio.size / sr)
        records.append(PairRecord(f"p{i:04d}", seed_span, reen_span, judgment,
                                  str(1 + i % 2), language))
        seed_parts += [seed_audio, gap]
        reen_parts += [reen_audio, gap]
        seed_t += (seed_audio.size + gap.size) / sr
        reen_t += (reen_audio.size + gap.size) / sr

    write_wav(out / "seed.wav", np.concatenate(seed_parts), sr)
    write_wav(out / "reen.wav", np.concatenate(reen_parts), sr)
    manifest = write_manifest(out / "manifest.csv", records, relative_to=out)
    logger.info("synthesized %d pairs under %s", n_pairs, out)
    return manifest
