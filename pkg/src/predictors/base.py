"""
:module: src.predictors.base
:synopsis: Shared pieces of the four predictors: z-score stats, the TrainedModel base, JSON dispatch.

Every model works on deltas in the full 100-dim layout and selects its own
``dims`` (all of them unless trained for a subset experiment). The feature
layout labels and the extractor version travel with the serialized model so
``score`` can refuse vectors produced by a different extractor.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

import numpy as np

from src.config.settings import FEATURE_VERSION
from src.models.features import FeatureVector
from src.models.layout import DIM_LABELS, N_DIMS
from src.validation.errors import ModelError

SD_FLOOR = 1e-8
MODEL_KINDS = ("euclidean", "linear", "knn", "forest")


class ZScoreStats:
    """
    Per-dimension mean / sd of training deltas.

    Parameters
    ----------
    mean, sd : array-like
        Same length; ``sd`` is floored at ``1e-8``.
    """
    __slots__ = ("mean", "sd")

    def __init__(self, mean, sd) -> None:
        mean = np.asarray(mean, dtype=float).reshape(-1)
        sd = np.asarray(sd, dtype=float).reshape(-1)
        if mean.shape != sd.shape:
            raise ValueError("mean and sd must have the same length.")
        self.mean = mean
        self.sd = np.maximum(sd, SD_FLOOR)

    @classmethod
    def from_data(cls, X: np.ndarray) -> "ZScoreStats":
        X = np.asarray(X, dtype=float)
        return cls(X.mean(axis=0), X.std(axis=0))

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.sd

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "sd": self.sd.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "ZScoreStats":
        return cls(d["mean"], d["sd"])


def as_matrix(X) -> np.ndarray:
    """FeatureVector, 1-D or 2-D input to a ``(n, 100)`` float matrix."""
    if isinstance(X, FeatureVector):
        X = X.values
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != N_DIMS:
        raise ModelError(f"expected deltas with {N_DIMS} columns, got shape {arr.shape}")
    return arr


def check_training(X: np.ndarray, y: np.ndarray, min_n: int = 1) -> tuple[np.ndarray, np.ndarray]:
    X = as_matrix(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.shape[0] != y.size:
        raise ModelError("deltas and judgments differ in length")
    if y.size < min_n:
        raise ModelError(f"need at least {min_n} training pairs, got {y.size}")
    return X, y


class TrainedModel:
    """
    Base class of the four predictors.

    Parameters
    ----------
    dims : sequence of int
        Layout dimensions the model reads (ascending).
    stats : ZScoreStats
        Training-delta statistics over ``dims``.
    feature_version : str
        Extractor version the training vectors came from.
    """
    kind = ""

    def __init__(self, dims: Sequence[int], stats: ZScoreStats,
                 feature_version: str = FEATURE_VERSION) -> None:
        dims = np.asarray(dims, dtype=int).reshape(-1)
        if dims.size == 0:
            raise ModelError("a model needs at least one dimension")
        if stats.mean.size != dims.size:
            raise ModelError("stats do not match the selected dimensions")
        self.dims = dims
        self.stats = stats
        self.feature_version = str(feature_version)
        # ExtractionConfig.to_dict() of the vectors the model was trained on, when known
        self.extraction: Optional[dict[str, Any]] = None

    @property
    def feature_layout(self) -> list[str]:
        return [DIM_LABELS[i] for i in self.dims]

    def select(self, X) -> np.ndarray:
        return as_matrix(X)[:, self.dims]

    def zscored(self, X) -> np.ndarray:
        return self.stats.transform(self.select(X))

    def predict(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict_one(self, delta) -> float:
        return float(self.predict(delta)[0])

    def params_dict(self) -> dict[str, Any]:
        raise NotImplementedError

    def to_dict(self) -> dict[str, Any]:
        d = {
            "kind": self.kind,
            "feature_version": self.feature_version,
            "feature_layout": self.feature_layout,
            "dims": self.dims.tolist(),
            "stats": self.stats.to_dict(),
            "params": self.params_dict(),
        }
        if self.extraction is not None:
            d["extraction"] = dict(self.extraction)
        return d

    def check_compatible(self, feature_version: str = FEATURE_VERSION) -> None:
        """Raise ``ModelError`` unless the model matches this extractor."""
        if self.feature_version != feature_version:
            raise ModelError(f"model was trained on feature version {self.feature_version}, "
                             f"extractor is version {feature_version}; re-train or re-extract")

    def extraction_mismatch(self, extraction: dict[str, Any]) -> list[str]:
        """Extraction settings whose value differs from the ones the model was trained with.

        Empty when they agree or when the model document predates stored settings.
        """
        if self.extraction is None:
            return []
        keys = set(self.extraction) | set(extraction)
        return sorted(k for k in keys if self.extraction.get(k) != extraction.get(k))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dims={self.dims.size})"


def header_from_dict(d: dict) -> tuple[np.ndarray, ZScoreStats, str]:
    """Validate the common part of a serialized model."""
    try:
        dims = np.asarray(d["dims"], dtype=int)
        layout = list(d["feature_layout"])
        stats = ZScoreStats.from_dict(d["stats"])
        version = str(d["feature_version"])
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model document: {exc}") from exc
    if np.any(dims < 0) or np.any(dims >= N_DIMS):
        raise ModelError("model dims outside the feature layout")
    if layout != [DIM_LABELS[i] for i in dims]:
        raise ModelError("model feature layout does not match this toolkit's layout")
    return dims, stats, version


def resolve_dims(dims: Optional[Sequence[int]]) -> np.ndarray:
    return np.arange(N_DIMS) if dims is None else np.asarray(sorted(set(int(i) for i in dims)), dtype=int)
