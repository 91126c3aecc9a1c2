"""
:module: tests.test_config
:synopsis: Tests for the configuration dataclasses (strict parsing, validation, round trip).
"""

import pytest

from src.config import ExtractionConfig, ForestConfig, RunConfig
from src.validation import ConfigError


def test_run_config_round_trip_keeps_nested_configs():
    cfg = RunConfig(manifest_path="m.csv", split_kind="k-fold", k=5,
                    forest=ForestConfig(n_trees=7, rng_seed=3),
                    subsets=[{"types": ["cpps"], "mode": "exclude"}])
    back = RunConfig.from_dict(cfg.to_dict())
    assert back.to_dict() == cfg.to_dict()
    assert back.forest.n_trees == 7


def test_unknown_keys_fail_loudly():
    """Typos in a JSON config raise instead of being ignored."""
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"manifest_path": "m.csv", "n_tres": 5})
    with pytest.raises(ConfigError):
        ForestConfig.from_dict({"trees": 5})


@pytest.mark.parametrize("changes", [
    {"manifest_path": ""},
    {"split_kind": "random"},
    {"split_kind": "k-fold", "k": 1},
    {"delta_mode": "squared"},
    {"knn_k": 0},
    {"subsets": [{"types": ["loudness"]}]},
    {"subsets": [{"types": ["cpps"], "mode": "only-ish"}]},
])
def test_run_config_validate_rejects(changes):
    d = {"manifest_path": "m.csv", **changes}
    with pytest.raises(ConfigError):
        RunConfig.from_dict(d).validate()


def test_extraction_constants_and_checks():
    cfg = ExtractionConfig()
    assert cfg.frames_for_ms(300) == 30
    assert cfg.frames_for_ms(150) == 15
    with pytest.raises(ConfigError):
        ExtractionConfig.from_dict({"frame_ms": 5.0, "hop_ms": 10.0})
    with pytest.raises(ConfigError):
        ExtractionConfig.from_dict({"cpps_window_ms": 20.0})


def test_forest_features_per_split_default():
    """``None`` means a third of the trained dimensions, rounded up."""
    assert ForestConfig().resolved_features_per_split(100) == 34
    assert ForestConfig().resolved_features_per_split(10) == 4
    assert ForestConfig(features_per_split=50).resolved_features_per_split(10) == 10
