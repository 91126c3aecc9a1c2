"""
:module: src.predictors.linear
:synopsis: Ridge regression on z-scored deltas (unpenalized intercept).

Fitting goes through scikit-learn's ``Ridge``; prediction is a plain dot
product over the stored weights so a deserialized model predicts exactly
like the fitted one.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
from sklearn.linear_model import Ridge

from src.config.settings import FEATURE_VERSION
from .base import TrainedModel, ZScoreStats, check_training, header_from_dict, resolve_dims

logger = logging.getLogger(__name__)

DEFAULT_LAMBDA = 1e-3


class LinearModel(TrainedModel):
    """
    Parameters
    ----------
    weights : array-like
        One weight per selected dimension (z-scored units).
    intercept : float
    ridge_lambda : float
        Penalty used at fit time (recorded only).
    """
    kind = "linear"

    def __init__(self, dims, stats: ZScoreStats, weights, intercept: float,
                 ridge_lambda: float = DEFAULT_LAMBDA, feature_version: str = FEATURE_VERSION) -> None:
        super().__init__(dims, stats, feature_version)
        self.weights = np.asarray(weights, dtype=float).reshape(-1)
        if self.weights.size != self.dims.size:
            raise ValueError("one weight per dimension expected.")
        self.intercept = float(intercept)
        self.ridge_lambda = float(ridge_lambda)

    def predict(self, X) -> np.ndarray:
        return self.zscored(X) @ self.weights + self.intercept

    def raw_coefficients(self) -> tuple[np.ndarray, float]:
        """Weights and intercept expressed on the unscaled deltas."""
        w = self.weights / self.stats.sd
        return w, self.intercept - float(np.dot(w, self.stats.mean))

    def params_dict(self) -> dict:
        return {"weights": self.weights.tolist(), "intercept": self.intercept,
                "ridge_lambda": self.ridge_lambda}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearModel":
        dims, stats, version = header_from_dict(d)
        p = d["params"]
        return cls(dims, stats, p["weights"], p["intercept"], p.get("ridge_lambda", DEFAULT_LAMBDA), version)


def fit_linear(X, y, ridge_lambda: float = DEFAULT_LAMBDA, dims: Optional[Sequence[int]] = None,
               feature_version: str = FEATURE_VERSION) -> LinearModel:
    """Ridge fit; all-identical targets give a constant model (with a warning).

    Raises
    ------
    ModelError
        Fewer than 2 training pairs.
    """
    X, y = check_training(X, y, min_n=2)
    d = resolve_dims(dims)
    stats = ZScoreStats.from_data(X[:, d])
    if np.ptp(y) == 0:
        logger.warning("linear model: all %d targets equal %g, fitting a constant", y.size, y[0])
        return LinearModel(d, stats, np.zeros(d.size), float(y[0]), ridge_lambda, feature_version)
    reg = Ridge(alpha=ridge_lambda, fit_intercept=True)
    reg.fit(stats.transform(X[:, d]), y)
    return LinearModel(d, stats, reg.coef_, float(reg.intercept_), ridge_lambda, feature_version)
