"""
:module: src.config.settings
:synopsis: Configuration dataclasses for extraction, forests and whole runs.

Every tunable constant of the pipeline lives here so it can be written to
``run_metadata.json`` and read back to reproduce a run.

Notes
-----
- ``from_dict`` rejects unknown keys (typos in a JSON config should fail loudly).
- ``FEATURE_VERSION`` is bumped whenever a per-frame formula changes; the
  feature cache and serialized models both record it.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from src.validation.errors import ConfigError

FEATURE_VERSION = "1"

SPLIT_KINDS = ("session-holdout", "k-fold", "language-holdout")
DELTA_MODES = ("signed", "absolute")


def _from_dict(cls, d: dict[str, Any]):
    """Shared strict constructor: unknown keys raise ``ConfigError``."""
    known = {f.name for f in dataclasses.fields(cls)}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"{cls.__name__}: unknown keys {sorted(extra)}")
    return cls(**d)


@dataclass(frozen=True)
class ExtractionConfig:
    """
    Constants of the per-frame analysis (all stated at the canonical rate).

    Attributes
    ----------
    sample_rate : int
        Canonical analysis rate; inputs are resampled to it on load.
    frame_ms, hop_ms : float
        Frame length and hop for every per-frame feature.
    pitch_window_ms : float
        Autocorrelation window centered on each frame (wider than the frame so
        two periods of the lowest f0 fit).
    f0_min, f0_max : float
        Pitch search range in Hz.
    voicing_threshold : float
        Minimum normalized autocorrelation peak for a voiced frame.
    octave_factor : float
        Shortest-lag peak scoring at least this fraction of the best one wins.
    cpps_window_ms : float
        Analysis window for the cepstrum (must exceed 2 / ``cpps_quefrency_max_hz``).
    cpps_time_smooth, cpps_quefrency_smooth : int
        Moving-average widths (frames / quefrency bins).
    cpps_quefrency_min_hz, cpps_quefrency_max_hz : float
        Peak search band expressed as frequencies (quefrency = 1/f).
    rate_half_window_ms, lengthening_half_window_ms, creak_half_window_ms, pitch_half_window_ms : float
        Half-widths of the centered moving windows.
    lengthening_flux_percentile : float
        Track percentile of flux used as the "no change" reference.
    creak_f0_ratio : float
        Voiced frames below this fraction of the track median f0 count as creaky.
    creak_max_hz : float
        A chosen autocorrelation peak below this frequency counts as irregular phonation.
    creak_min_strength : float
        Minimum peak score for the sub-``creak_max_hz`` rule.
    min_voiced_fraction : float
        Voicing needed inside the pitch window for narrowness / disalignment.
    min_pitch_spread_hz : float
        Floor for the percentile spreads used to scale the pitch percepts.
    speech_percentile : float
        Frames with intensity above this track percentile are "speech" for normalization.
    sd_floor : float
        Floor on the normalization standard deviation.
    energy_floor : float
        Epsilon inside the log energy.
    """
    sample_rate: int = 16000
    frame_ms: float = 32.0
    hop_ms: float = 10.0
    pitch_window_ms: float = 40.0
    f0_min: float = 50.0
    f0_max: float = 500.0
    voicing_threshold: float = 0.45
    octave_factor: float = 0.9
    cpps_window_ms: float = 64.0
    cpps_time_smooth: int = 10
    cpps_quefrency_smooth: int = 10
    cpps_quefrency_min_hz: float = 60.0
    cpps_quefrency_max_hz: float = 300.0
    rate_half_window_ms: float = 300.0
    lengthening_half_window_ms: float = 150.0
    creak_half_window_ms: float = 100.0
    pitch_half_window_ms: float = 300.0
    lengthening_flux_percentile: float = 95.0
    creak_f0_ratio: float = 0.6
    creak_max_hz: float = 60.0
    creak_min_strength: float = 0.3
    min_voiced_fraction: float = 0.5
    min_pitch_spread_hz: float = 1.0
    speech_percentile: float = 30.0
    sd_floor: float = 1e-8
    energy_floor: float = 1e-10

    def validate(self) -> "ExtractionConfig":
        """Raise ``ConfigError`` on inconsistent constants, return self otherwise."""
        if self.sample_rate <= 0:
            raise ConfigError("sample_rate must be > 0")
        if not (self.frame_ms >= self.hop_ms > 0):
            raise ConfigError("need frame_ms >= hop_ms > 0")
        if not (0 < self.f0_min < self.f0_max < self.sample_rate / 2):
            raise ConfigError("need 0 < f0_min < f0_max < sample_rate/2")
        if not (0.0 <= self.voicing_threshold <= 1.0):
            raise ConfigError("voicing_threshold must be in [0, 1]")
        if not (0.0 < self.octave_factor <= 1.0):
            raise ConfigError("octave_factor must be in (0, 1]")
        if self.cpps_window_ms / 1000.0 < 2.0 / self.cpps_quefrency_min_hz:
            raise ConfigError("cpps_window_ms too short for the quefrency range")
        if not (0.0 < self.speech_percentile < 100.0):
            raise ConfigError("speech_percentile must be in (0, 100)")
        return self

    def frames_for_ms(self, ms: float) -> int:
        """Number of hops covering ``ms`` (rounded)."""
        return int(round(ms / self.hop_ms))

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExtractionConfig":
        return _from_dict(cls, d).validate()


@dataclass(frozen=True)
class ForestConfig:
    """
    Random forest hyper-parameters.

    ``features_per_split`` of ``None`` means ``ceil(n_dims / 3)`` for whatever
    number of dimensions the forest is trained on (100 for the full layout).
    """
    n_trees: int = 100
    max_depth: Optional[int] = None
    min_leaf: int = 5
    features_per_split: Optional[int] = None
    rng_seed: int = 0
    n_jobs: int = 1

    def validate(self) -> "ForestConfig":
        if self.n_trees < 1:
            raise ConfigError("n_trees must be >= 1")
        if self.min_leaf < 1:
            raise ConfigError("min_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ConfigError("max_depth must be >= 1 when given")
        if self.features_per_split is not None and self.features_per_split < 1:
            raise ConfigError("features_per_split must be >= 1 when given")
        return self

    def resolved_features_per_split(self, n_dims: int) -> int:
        """Candidate dimensions per split for a model over ``n_dims`` inputs."""
        if self.features_per_split is None:
            return max(1, math.ceil(n_dims / 3))
        return min(self.features_per_split, n_dims)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ForestConfig":
        return _from_dict(cls, d).validate()


@dataclass
class RunConfig:
    """
    Everything an ``experiment`` run needs; serialized into ``run_metadata.json``.

    Attributes
    ----------
    manifest_path : str
        Pair manifest CSV.
    output_dir : str
        Run directory; the CLI never writes outside it.
    split_kind : str
        One of ``SPLIT_KINDS``.
    k : int
        Folds for ``k-fold``.
    split_seed : int
        Shuffle seed for ``k-fold``.
    train_group, test_group : str, optional
        Explicit labels for the holdout kinds.
    delta_mode : str
        ``signed`` (default) or ``absolute``.
    knn_k : int
        Neighbours for KNN (clipped to the training size).
    ridge_lambda : float
        Ridge penalty on z-scored deltas.
    forest : ForestConfig
        Forest settings used for every forest of the run.
    extraction : ExtractionConfig
        Per-frame analysis constants.
    subsets : list[dict]
        Extra subset experiments, each ``{"types": [...]}`` or
        ``{"windows": [...]}`` plus ``"mode": "only"|"exclude"``.
    compare_delta_modes : bool
        Also score the four models with the other delta mode.
    n_jobs : int
        Workers for extraction and folds.
    feature_cache : str, optional
        Directory of a previous ``extract`` run to read vectors from.
    """
    manifest_path: str = ""
    output_dir: str = "run"
    split_kind: str = "session-holdout"
    k: int = 10
    split_seed: int = 0
    train_group: Optional[str] = None
    test_group: Optional[str] = None
    delta_mode: str = "signed"
    knn_k: int = 50
    ridge_lambda: float = 1e-3
    forest: ForestConfig = field(default_factory=ForestConfig)
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)
    subsets: list[dict[str, Any]] = field(default_factory=list)
    compare_delta_modes: bool = False
    n_jobs: int = 1
    feature_cache: Optional[str] = None

    def validate(self) -> "RunConfig":
        """Fail fast on anything that would only blow up halfway through a run."""
        # local import keeps src.config free of model imports at load time
        from src.models.layout import parse_selector

        if not self.manifest_path:
            raise ConfigError("manifest_path is required")
        if self.split_kind not in SPLIT_KINDS:
            raise ConfigError(f"split_kind must be one of {SPLIT_KINDS}")
        if self.split_kind == "k-fold" and self.k < 2:
            raise ConfigError("k must be >= 2")
        if self.delta_mode not in DELTA_MODES:
            raise ConfigError(f"delta_mode must be one of {DELTA_MODES}")
        if self.knn_k < 1:
            raise ConfigError("knn_k must be >= 1")
        if self.ridge_lambda < 0:
            raise ConfigError("ridge_lambda must be >= 0")
        for sel in self.subsets:
            mode = sel.get("mode", "only")
            if mode not in ("only", "exclude"):
                raise ConfigError(f"subset mode must be only|exclude, got {mode!r}")
            try:
                parse_selector(sel)
            except ValueError as exc:
                raise ConfigError(f"bad subset selection {sel!r}: {exc}") from exc
        self.forest.validate()
        self.extraction.validate()
        return self

    def other_delta_mode(self) -> str:
        return "absolute" if self.delta_mode == "signed" else "signed"

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["forest"] = self.forest.to_dict()
        d["extraction"] = self.extraction.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunConfig":
        d = dict(d)
        forest = ForestConfig.from_dict(d.pop("forest", {}) or {})
        extraction = ExtractionConfig.from_dict(d.pop("extraction", {}) or {})
        cfg = _from_dict(cls, d)
        cfg.forest = forest
        cfg.extraction = extraction
        return cfg
