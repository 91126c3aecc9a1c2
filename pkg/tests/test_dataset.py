"""
:module: tests.test_dataset
:synopsis: Tests for manifest parsing, split protocols, delta datasets and synthetic data.

Notes
-----
- Manifests are written inline into ``tmp_path``; audio existence is only
  checked where the test is about it.
"""

from pathlib import Path

import numpy as np
import pytest

from src.dataset import (
    DeltaDataset, build_delta_dataset, load_manifest, make_split, synthetic_delta_dataset,
    write_manifest,
)
from src.dataset.synthetic import planted_judgment
from src.models import FeatureVector
from src.models.layout import dim_index
from src.validation import ManifestError, SplitError

HEADER = "pair_id,seed_wav,seed_start,seed_end,reen_wav,reen_start,reen_end,judgment,session,language\n"


def _manifest(tmp_path, rows, header=HEADER):
    p = tmp_path / "pairs.csv"
    p.write_text(header + "".join(r + "\n" for r in rows), encoding="utf-8")
    return p


def _rows(n, sessions=("1", "2"), languages=("en",)):
    return [f"p{i:02d},s.wav,0.0,1.0,r.wav,0.5,1.5,{1 + i % 5},{sessions[i % len(sessions)]},"
            f"{languages[i % len(languages)]}" for i in range(n)]


def test_manifest_parses_and_resolves_relative_paths(tmp_path):
    p = _manifest(tmp_path, _rows(3))
    records = load_manifest(p, check_audio=False)
    assert [r.pair_id for r in records] == ["p00", "p01", "p02"]
    assert Path(records[0].seed.track_path) == tmp_path.resolve() / "s.wav"
    assert records[1].reenactment.start_s == 0.5
    assert records[2].judgment == 3.0
    assert records[0].seed.channel is None


def test_manifest_channel_columns(tmp_path):
    header = HEADER.rstrip("\n") + ",seed_channel,reen_channel\n"
    p = _manifest(tmp_path, ["a,s.wav,0,1,r.wav,0,1,3,1,en,0,1", "b,s.wav,0,1,r.wav,0,1,3,1,en,,"], header)
    records = load_manifest(p, check_audio=False)
    assert (records[0].seed.channel, records[0].reenactment.channel) == (0, 1)
    assert records[1].seed.channel is None


@pytest.mark.parametrize("row, line", [
    ("p0,s.wav,0,1,r.wav,0,1,6,1,en", 2),
    ("p0,s.wav,1,0.5,r.wav,0,1,3,1,en", 2),
    ("p0,s.wav,x,1,r.wav,0,1,3,1,en", 2),
    ("p0,s.wav,0,1,r.wav,0,1,3,1", 2),
])
def test_manifest_row_errors_carry_line_numbers(tmp_path, row, line):
    with pytest.raises(ManifestError) as info:
        load_manifest(_manifest(tmp_path, [row]), check_audio=False)
    assert info.value.line == line


def test_manifest_duplicates_and_missing_columns(tmp_path):
    dup = _rows(2) + ["p00,s.wav,0,1,r.wav,0,1,3,1,en"]
    with pytest.raises(ManifestError) as info:
        load_manifest(_manifest(tmp_path, dup), check_audio=False)
    assert info.value.line == 4
    with pytest.raises(ManifestError):
        load_manifest(_manifest(tmp_path, ["a,b"], header="pair_id,seed_wav\n"), check_audio=False)
    with pytest.raises(ManifestError):
        load_manifest(tmp_path / "nope.csv")


def test_manifest_missing_audio_checked_on_request(tmp_path):
    p = _manifest(tmp_path, _rows(1))
    with pytest.raises(ManifestError):
        load_manifest(p)
    assert len(load_manifest(p, check_audio=False)) == 1


def test_write_manifest_round_trip(tmp_path):
    records = load_manifest(_manifest(tmp_path, _rows(4)), check_audio=False)
    out = write_manifest(tmp_path / "again" / "pairs.csv", records)
    again = load_manifest(out, check_audio=False)
    assert [r.to_dict() for r in again] == [r.to_dict() for r in records]


def test_session_holdout_defaults_to_two_smallest_labels(tmp_path, caplog):
    records = load_manifest(_manifest(tmp_path, _rows(9, sessions=("2", "1", "3"))), check_audio=False)
    plan = make_split(records, "session-holdout")
    assert plan.n_folds == 1
    train, test = plan.folds[0]
    assert all(r.session == "1" for r in records if r.pair_id in train)
    assert all(r.session == "2" for r in records if r.pair_id in test)
    assert "ignoring" in caplog.text


def test_holdout_needs_two_groups(tmp_path):
    records = load_manifest(_manifest(tmp_path, _rows(4, sessions=("1",))), check_audio=False)
    with pytest.raises(SplitError):
        make_split(records, "session-holdout")
    with pytest.raises(SplitError):
        make_split(records, "language-holdout")


def test_language_holdout_with_explicit_groups(tmp_path):
    records = load_manifest(_manifest(tmp_path, _rows(6, languages=("en", "es"))), check_audio=False)
    plan = make_split(records, "language-holdout", train_group="es", test_group="en")
    train, test = plan.folds[0]
    assert {r.language for r in records if r.pair_id in train} == {"es"}
    with pytest.raises(SplitError):
        make_split(records, "language-holdout", train_group="fr")


def test_kfold_partitions_and_is_deterministic(tmp_path):
    records = load_manifest(_manifest(tmp_path, _rows(20)), check_audio=False)
    plan = make_split(records, "k-fold", k=10, seed=5)
    assert plan.n_folds == 10
    tests = [pid for _, test in plan.folds for pid in test]
    assert sorted(tests) == sorted(r.pair_id for r in records)
    assert make_split(list(reversed(records)), "k-fold", k=10, seed=5).to_dict() == plan.to_dict()
    assert make_split(records, "k-fold", k=10, seed=6).to_dict() != plan.to_dict()
    with pytest.raises(SplitError):
        make_split(records, "k-fold", k=21)
    with pytest.raises(SplitError):
        make_split(records, "k-fold", k=1)


def test_build_delta_dataset_skips_pairs_without_vectors(tmp_path):
    records = load_manifest(_manifest(tmp_path, _rows(3)), check_audio=False)
    vectors = {}
    for r in records[:2]:
        sid, rid = r.utterance_ids()
        vectors[sid] = FeatureVector(np.ones(100))
        vectors[rid] = FeatureVector(np.full(100, 3.0))
    data = build_delta_dataset(list(reversed(records)), vectors)
    assert data.pair_ids == ["p00", "p01"]
    assert np.all(data.X == -2.0)
    assert np.all(data.with_mode("absolute").X == 2.0)


def test_delta_dataset_subset_and_validation():
    data = synthetic_delta_dataset(n_pairs=10, seed=0)
    sub = data.subset(["p0007", "p0002", "missing"])
    assert sub.pair_ids == ["p0002", "p0007"]
    assert np.array_equal(sub.X[1], data.X[7])
    with pytest.raises(ValueError):
        DeltaDataset(["a", "a"], np.zeros((2, 100)), np.zeros((2, 100)), [1, 2], ["1", "1"], ["x", "x"])


def test_synthetic_dataset_plants_rate_signal():
    data = synthetic_delta_dataset(n_pairs=300, seed=1, delta_noise=0.0, judgment_noise=0.0,
                                   pitch_weight=0.0)
    d_rate = data.X[:, dim_index("speaking_rate", 4)]
    assert np.allclose(data.y, planted_judgment(d_rate, np.zeros_like(d_rate), np.zeros_like(d_rate),
                                                pitch_weight=0.0))
    assert set(data.sessions) == {"1", "2"}
    assert np.all((data.y >= 1) & (data.y <= 5))
