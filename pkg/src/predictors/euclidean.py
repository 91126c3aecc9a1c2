"""
:module: src.predictors.euclidean
:synopsis: Equal-weight baseline: L2 norm of the z-scored delta.

The output is a DISTANCE (higher = less similar), so its correlation with
similarity judgments is expected to be negative.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.config.settings import FEATURE_VERSION
from .base import TrainedModel, ZScoreStats, as_matrix, check_training, header_from_dict, resolve_dims


def euclidean_score(delta, stats: ZScoreStats) -> float:
    """``|| (delta - mean) / sd ||`` for one full-layout delta."""
    z = stats.transform(as_matrix(delta))
    return float(np.sqrt(np.sum(z * z)))


class EuclideanModel(TrainedModel):
    kind = "euclidean"

    def predict(self, X) -> np.ndarray:
        z = self.zscored(X)
        return np.sqrt(np.sum(z * z, axis=1))

    def params_dict(self) -> dict:
        return {}

    @classmethod
    def from_dict(cls, d: dict) -> "EuclideanModel":
        dims, stats, version = header_from_dict(d)
        return cls(dims, stats, version)


def fit_euclidean(X, y=None, dims: Optional[Sequence[int]] = None,
                  feature_version: str = FEATURE_VERSION) -> EuclideanModel:
    """Only the training-delta statistics are learned; ``y`` is unused."""
    X = as_matrix(X) if y is None else check_training(X, y)[0]
    d = resolve_dims(dims)
    return EuclideanModel(d, ZScoreStats.from_data(X[:, d]), feature_version)
