"""
:module: src.predictors.__init__
:synopsis: Re-exports for the four similarity predictors and their evaluation.
"""

from .base import MODEL_KINDS, TrainedModel, ZScoreStats
from .euclidean import EuclideanModel, euclidean_score, fit_euclidean
from .evaluation import FoldRun, evaluate, fit_model, model_from_dict, mse, pearson, run_folds
from .forest import FlatTree, ForestModel, fit_forest
from .knn import KNNModel, fit_knn, knn_predict
from .linear import LinearModel, fit_linear

__all__ = [
    "EuclideanModel",
    "FlatTree",
    "FoldRun",
    "ForestModel",
    "KNNModel",
    "LinearModel",
    "MODEL_KINDS",
    "TrainedModel",
    "ZScoreStats",
    "euclidean_score",
    "evaluate",
    "fit_euclidean",
    "fit_forest",
    "fit_knn",
    "fit_linear",
    "fit_model",
    "knn_predict",
    "model_from_dict",
    "mse",
    "pearson",
    "run_folds",
]
