"""
:module: src.predictors.knn
:synopsis: Unweighted k-nearest-neighbour regression over z-scored deltas.

Neighbours are ranked by Euclidean distance; equal distances are broken by
ascending pair id, which makes predictions independent of the order the
training pairs were stored in.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.config.settings import FEATURE_VERSION
from src.validation.errors import ModelError
from .base import TrainedModel, ZScoreStats, check_training, header_from_dict, resolve_dims

DEFAULT_K = 50


class KNNModel(TrainedModel):
    """
    Parameters
    ----------
    train_z : array-like
        ``(n, len(dims))`` z-scored training deltas.
    targets : array-like
        ``(n,)`` judgments.
    pair_ids : sequence of str
        Tie-break keys.
    k : int
        Requested neighbours; ``min(k, n)`` are used.
    """
    kind = "knn"

    def __init__(self, dims, stats: ZScoreStats, train_z, targets, pair_ids: Sequence[str],
                 k: int = DEFAULT_K, feature_version: str = FEATURE_VERSION) -> None:
        super().__init__(dims, stats, feature_version)
        self.train_z = np.asarray(train_z, dtype=float).reshape(-1, self.dims.size)
        self.targets = np.asarray(targets, dtype=float).reshape(-1)
        self.pair_ids = [str(p) for p in pair_ids]
        if self.train_z.shape[0] == 0:
            raise ModelError("KNN needs a non-empty training set")
        if not (self.train_z.shape[0] == self.targets.size == len(self.pair_ids)):
            raise ModelError("KNN training arrays differ in length")
        if k < 1:
            raise ModelError("k must be >= 1")
        self.k = int(k)
        # rank of each pair id, used as the secondary sort key
        self._id_rank = np.argsort(np.argsort(np.array(self.pair_ids), kind="stable"), kind="stable")

    @property
    def effective_k(self) -> int:
        return min(self.k, self.targets.size)

    def neighbours(self, query_z: np.ndarray) -> np.ndarray:
        """Training row indices of the ``effective_k`` nearest rows, nearest first."""
        diff = self.train_z - query_z
        dist = np.sqrt(np.sum(diff * diff, axis=1))
        order = np.lexsort((self._id_rank, dist))
        return order[:self.effective_k]

    def predict(self, X) -> np.ndarray:
        Z = self.zscored(X)
        return np.array([self.targets[self.neighbours(q)].mean() for q in Z])

    def params_dict(self) -> dict:
        return {"k": self.k, "train_z": self.train_z.tolist(),
                "targets": self.targets.tolist(), "pair_ids": self.pair_ids}

    @classmethod
    def from_dict(cls, d: dict) -> "KNNModel":
        dims, stats, version = header_from_dict(d)
        p = d["params"]
        return cls(dims, stats, p["train_z"], p["targets"], p["pair_ids"], p["k"], version)


def fit_knn(X, y, pair_ids: Sequence[str], k: int = DEFAULT_K, dims: Optional[Sequence[int]] = None,
            feature_version: str = FEATURE_VERSION) -> KNNModel:
    """Store z-scored training deltas (stats from the training set itself).

    Raises
    ------
    ModelError
        Empty training set.
    """
    X, y = check_training(X, y, min_n=1)
    if len(pair_ids) != y.size:
        raise ModelError("one pair id per training row expected")
    d = resolve_dims(dims)
    stats = ZScoreStats.from_data(X[:, d])
    return KNNModel(d, stats, stats.transform(X[:, d]), y, pair_ids, k, feature_version)


def knn_predict(model: KNNModel, delta) -> float:
    """Mean judgment of the ``min(k, n)`` nearest training deltas to one query."""
    return model.predict_one(delta)
