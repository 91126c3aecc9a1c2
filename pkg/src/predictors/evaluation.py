"""
:module: src.predictors.evaluation
:synopsis: Pearson / MSE scoring, the model factory, and fold runs over a SplitPlan.

Pearson is undefined (``None``) for fewer than 2 points or a constant side;
callers render it as a blank, never as 0. MSE is always reported.

Notes
-----
- ``run_folds`` pools the test predictions of every fold (k-fold test sets
  partition the pairs, so each pair is predicted exactly once); holdout plans
  have a single fold.
- Folds are independent and may run in parallel through ``joblib``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import pearsonr
from sklearn.metrics import mean_squared_error

from src.config.settings import RunConfig
from src.dataset.deltas import DeltaDataset
from src.models.split import SplitPlan
from src.validation.errors import ModelError
from .base import MODEL_KINDS, TrainedModel
from .euclidean import EuclideanModel, fit_euclidean
from .forest import ForestModel, fit_forest
from .knn import KNNModel, fit_knn
from .linear import LinearModel, fit_linear

logger = logging.getLogger(__name__)

_LOADERS = {
    "euclidean": EuclideanModel.from_dict,
    "linear": LinearModel.from_dict,
    "knn": KNNModel.from_dict,
    "forest": ForestModel.from_dict,
}


def pearson(pred, targets) -> Optional[float]:
    """Sample Pearson correlation or ``None`` when undefined."""
    a = np.asarray(pred, dtype=float).reshape(-1)
    b = np.asarray(targets, dtype=float).reshape(-1)
    if a.size != b.size:
        raise ValueError("pred and targets differ in length")
    if a.size < 2 or np.ptp(a) == 0 or np.ptp(b) == 0:
        return None
    return float(pearsonr(a, b)[0])


def mse(pred, targets) -> float:
    a = np.asarray(pred, dtype=float).reshape(-1)
    b = np.asarray(targets, dtype=float).reshape(-1)
    if a.size == 0:
        raise ValueError("cannot score an empty test set")
    return float(mean_squared_error(b, a))


def evaluate(model: TrainedModel, X, y) -> tuple[Optional[float], float]:
    """(pearson, mse) of ``model`` on test deltas ``X`` and judgments ``y``.

    Euclidean models are scored on their raw distance (negative correlation expected).
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.size == 0:
        raise ModelError("empty test set")
    pred = model.predict(X)
    return pearson(pred, y), mse(pred, y)


def fit_model(kind: str, train: DeltaDataset, config: RunConfig | None = None,
              dims: Optional[Sequence[int]] = None) -> TrainedModel:
    """Fit one of ``MODEL_KINDS`` on a training DeltaDataset."""
    cfg = config or RunConfig()
    if kind == "euclidean":
        return fit_euclidean(train.X, train.y, dims)
    if kind == "linear":
        return fit_linear(train.X, train.y, cfg.ridge_lambda, dims)
    if kind == "knn":
        return fit_knn(train.X, train.y, train.pair_ids, cfg.knn_k, dims)
    if kind == "forest":
        return fit_forest(train.X, train.y, cfg.forest, dims)
    raise ModelError(f"unknown model kind {kind!r} (expected one of {MODEL_KINDS})")


def model_from_dict(d: dict[str, Any]) -> TrainedModel:
    """Rebuild any serialized model; unknown kinds raise ``ModelError``."""
    kind = d.get("kind") if isinstance(d, dict) else None
    if kind not in _LOADERS:
        raise ModelError(f"unknown model kind {kind!r} in model document")
    try:
        model = _LOADERS[kind](d)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"malformed {kind} model: {exc}") from exc
    extraction = d.get("extraction")
    if extraction is not None and not isinstance(extraction, dict):
        raise ModelError(f"malformed {kind} model: extraction must be an object")
    model.extraction = extraction
    return model


@dataclass
class FoldRun:
    """Pooled out-of-fold predictions of one model kind on one split."""
    kind: str
    pair_ids: list[str]
    predictions: np.ndarray
    targets: np.ndarray
    models: list[TrainedModel]

    def score(self) -> tuple[Optional[float], float]:
        return pearson(self.predictions, self.targets), mse(self.predictions, self.targets)

    def predictions_for(self, ids: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
        pos = {pid: i for i, pid in enumerate(self.pair_ids)}
        idx = np.array([pos[p] for p in ids if p in pos], dtype=int)
        return self.predictions[idx], self.targets[idx]


def _one_fold(kind: str, data: DeltaDataset, train_ids, test_ids, config: RunConfig,
              dims: Optional[Sequence[int]]):
    train, test = data.subset(train_ids), data.subset(test_ids)
    if len(train) == 0 or len(test) == 0:
        raise ModelError("a fold lost all its train or test pairs (missing features?)")
    model = fit_model(kind, train, config, dims)
    return model, test.pair_ids, model.predict(test.X), test.y


def run_folds(kind: str, data: DeltaDataset, plan: SplitPlan, config: RunConfig | None = None,
              dims: Optional[Sequence[int]] = None, n_jobs: int = 1) -> FoldRun:
    """Fit ``kind`` on every fold's train set and predict its test set."""
    cfg = config or RunConfig()
    results = Parallel(n_jobs=n_jobs)(
        delayed(_one_fold)(kind, data, train, test, cfg, dims) for train, test in plan.folds)
    ids: list[str] = []
    preds, targets, models = [], [], []
    for model, test_ids, p, t in results:
        ids += test_ids
        preds.append(p)
        targets.append(t)
        models.append(model)
    order = np.argsort(np.array(ids), kind="stable")
    return FoldRun(kind, [ids[i] for i in order], np.concatenate(preds)[order],
                   np.concatenate(targets)[order], models)
