"""
:module: src.predictors.forest
:synopsis: Bootstrap random forest of CART regression trees with impurity importance.

Each tree gets its own substream of ``SeedSequence(rng_seed)`` which drives
both its bootstrap sample and the candidate-feature sampling of scikit-learn's
``DecisionTreeRegressor`` (variance-reduction splits, ``max_features`` candidate
dimensions per split). Trees are therefore identical whether they are grown
sequentially or by ``joblib`` workers. Rows are put in content order
before bootstrapping, so the forest does not depend on how the training
rows happen to be stored either.

Fitted trees are kept as flat node arrays (``FlatTree``); prediction walks
them directly, comparing inputs cast to float32 the same way scikit-learn
does, so a model loaded from JSON predicts exactly like the fitted one.

Importance of a dimension = total weighted impurity decrease of its splits
over all trees, normalized to sum 1 per forest (uniform when no split exists).
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from sklearn.tree import DecisionTreeRegressor

from src.config.settings import FEATURE_VERSION, ForestConfig
from src.models.layout import N_DIMS
from src.validation.errors import ModelError
from .base import TrainedModel, ZScoreStats, check_training, header_from_dict, resolve_dims

logger = logging.getLogger(__name__)

LEAF = -1


class FlatTree:
    """
    One regression tree as parallel node arrays.

    Parameters
    ----------
    feature : array-like of int
        Split column (index into the model's dims) or ``-1`` for leaves.
    threshold : array-like of float
        Go left when ``x <= threshold``.
    left, right : array-like of int
        Child node ids (``-1`` for leaves).
    value : array-like of float
        Mean target of the node.
    """
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature, threshold, left, right, value) -> None:
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=np.float64)

    @classmethod
    def from_sklearn(cls, est: DecisionTreeRegressor) -> "FlatTree":
        t = est.tree_
        leaf = t.children_left == -1
        return cls(np.where(leaf, LEAF, t.feature), np.where(leaf, 0.0, t.threshold),
                   np.where(leaf, LEAF, t.children_left), np.where(leaf, LEAF, t.children_right),
                   t.value[:, 0, 0])

    @property
    def n_nodes(self) -> int:
        return int(self.feature.size)

    def predict(self, X32: np.ndarray) -> np.ndarray:
        """Leaf values for rows of a float32 matrix over the model's dims."""
        node = np.zeros(X32.shape[0], dtype=np.int64)
        active = self.feature[node] != LEAF
        rows = np.arange(X32.shape[0])
        while active.any():
            r = rows[active]
            n = node[r]
            go_left = X32[r, self.feature[n]] <= self.threshold[n]
            node[r] = np.where(go_left, self.left[n], self.right[n])
            active = self.feature[node] != LEAF
        return self.value[node]

    def to_dict(self, dims: np.ndarray) -> dict:
        """Nested node records ``{"dim", "threshold", "left", "right"}`` / ``{"value"}``."""
        def build(i: int) -> dict:
            if self.feature[i] == LEAF:
                return {"value": float(self.value[i])}
            return {"dim": int(dims[self.feature[i]]), "threshold": float(self.threshold[i]),
                    "value": float(self.value[i]), "left": build(int(self.left[i])),
                    "right": build(int(self.right[i]))}
        return build(0)

    @classmethod
    def from_dict(cls, d: dict, dims: np.ndarray) -> "FlatTree":
        col = {int(dim): j for j, dim in enumerate(dims)}
        feature, threshold, left, right, value = [], [], [], [], []
        # preorder, children patched once their ids are known
        stack: list[tuple[dict, int, str]] = [(d, -1, "")]
        while stack:
            node, parent, side = stack.pop()
            i = len(feature)
            if parent >= 0:
                (left if side == "L" else right)[parent] = i
            if "dim" in node:
                if int(node["dim"]) not in col:
                    raise ModelError(f"tree splits on dim {node['dim']} outside the model dims")
                feature.append(col[int(node["dim"])])
                threshold.append(float(node["threshold"]))
                left.append(LEAF)
                right.append(LEAF)
                value.append(float(node.get("value", 0.0)))
                stack.append((node["right"], i, "R"))
                stack.append((node["left"], i, "L"))
            else:
                feature.append(LEAF)
                threshold.append(0.0)
                left.append(LEAF)
                right.append(LEAF)
                value.append(float(node["value"]))
        return cls(feature, threshold, left, right, value)


def impurity_decrease(est: DecisionTreeRegressor, n_features: int) -> np.ndarray:
    """Unnormalized weighted impurity decrease per input column of one tree."""
    t = est.tree_
    out = np.zeros(n_features)
    w, imp = t.weighted_n_node_samples, t.impurity
    for i in np.flatnonzero(t.children_left != -1):
        l, r = t.children_left[i], t.children_right[i]
        out[t.feature[i]] += w[i] * imp[i] - w[l] * imp[l] - w[r] * imp[r]
    return out


def canonical_rows(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rows sorted by content, so bootstrap draws do not depend on storage order."""
    order = np.lexsort(np.column_stack([y, X]).T)
    return X[order], y[order]


def _grow_tree(X: np.ndarray, y: np.ndarray, seed_seq: np.random.SeedSequence,
               config: ForestConfig, max_features: int) -> tuple[FlatTree, np.ndarray]:
    rng = np.random.default_rng(seed_seq)
    boot = rng.integers(0, y.size, y.size)
    est = DecisionTreeRegressor(max_depth=config.max_depth, min_samples_leaf=config.min_leaf,
                                max_features=max_features,
                                random_state=int(rng.integers(0, 2**31 - 1)))
    est.fit(X[boot], y[boot])
    return FlatTree.from_sklearn(est), impurity_decrease(est, X.shape[1])


class ForestModel(TrainedModel):
    """
    Parameters
    ----------
    trees : list[FlatTree]
    importances : array-like
        Normalized importance per selected dimension (sums to 1).
    config : ForestConfig
        Settings the forest was grown with.
    """
    kind = "forest"

    def __init__(self, dims, stats: ZScoreStats, trees: Sequence[FlatTree], importances,
                 config: ForestConfig, feature_version: str = FEATURE_VERSION) -> None:
        super().__init__(dims, stats, feature_version)
        if not trees:
            raise ModelError("a forest needs at least one tree")
        self.trees = list(trees)
        self.importances = np.asarray(importances, dtype=float).reshape(-1)
        if self.importances.size != self.dims.size:
            raise ModelError("one importance per dimension expected")
        self.config = config

    def predict(self, X) -> np.ndarray:
        X32 = self.select(X).astype(np.float32)
        total = np.zeros(X32.shape[0])
        for tree in self.trees:
            total += tree.predict(X32)
        return total / len(self.trees)

    def full_importances(self) -> np.ndarray:
        """Importances scattered into the 100-dim layout (0 outside ``dims``)."""
        out = np.zeros(N_DIMS)
        out[self.dims] = self.importances
        return out

    def params_dict(self) -> dict:
        return {"config": self.config.to_dict(), "importances": self.importances.tolist(),
                "trees": [t.to_dict(self.dims) for t in self.trees]}

    @classmethod
    def from_dict(cls, d: dict) -> "ForestModel":
        dims, stats, version = header_from_dict(d)
        p = d["params"]
        trees = [FlatTree.from_dict(t, dims) for t in p["trees"]]
        return cls(dims, stats, trees, p["importances"], ForestConfig.from_dict(p["config"]), version)


def fit_forest(X, y, config: ForestConfig | None = None, dims: Optional[Sequence[int]] = None,
               feature_version: str = FEATURE_VERSION) -> ForestModel:
    """Grow ``config.n_trees`` bootstrap trees.

    Raises
    ------
    ModelError
        Fewer than ``2 * min_leaf`` training pairs.
    """
    cfg = (config or ForestConfig()).validate()
    X, y = check_training(X, y)
    if y.size < 2 * cfg.min_leaf:
        raise ModelError(f"forest needs >= {2 * cfg.min_leaf} training pairs (min_leaf={cfg.min_leaf}), got {y.size}")
    d = resolve_dims(dims)
    Xd, y = canonical_rows(X[:, d], y)
    max_features = cfg.resolved_features_per_split(d.size)
    streams = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.n_trees)
    grown = Parallel(n_jobs=cfg.n_jobs)(
        delayed(_grow_tree)(Xd, y, s, cfg, max_features) for s in streams)

    raw = np.sum([imp for _, imp in grown], axis=0)
    total = float(raw.sum())
    if total > 0:
        importances = raw / total
    else:
        logger.warning("forest: no informative split (constant targets?), using uniform importance")
        importances = np.full(d.size, 1.0 / d.size)
    return ForestModel(d, ZScoreStats.from_data(Xd), [t for t, _ in grown], importances, cfg, feature_version)
