"""
:module: src.importance.analysis
:synopsis: Feature-importance methodologies: per-dimension correlation, fold-averaged
    forest importance, subset (only / exclude) retraining, and per-type / per-position tables.

All forests of one analysis share ``RunConfig.forest`` (same ``rng_seed``), so
``only`` with every type reproduces the full model exactly and every number
is reproducible from (manifest, split seed, forest seed).

Notes
-----
- Undefined correlations stay ``None`` all the way to the CSV writer.
- Fold-averaged importances are renormalized after averaging.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from src.config.settings import RunConfig
from src.dataset.deltas import DeltaDataset
from src.models.layout import (
    FEATURE_NAMES, N_DIMS, N_WINDOWS, PITCH_TYPES, complement, dims_for_types,
    dims_for_windows, parse_selector, selector_name, window_label,
)
from src.models.split import SplitPlan
from src.predictors.evaluation import FoldRun, pearson, run_folds
from src.predictors.forest import ForestModel
from src.validation.errors import ConfigError

logger = logging.getLogger(__name__)


def per_dimension_correlations(X, y) -> list[Optional[float]]:
    """Pearson of every delta dimension with the judgments (``None`` for constant dims)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.shape[0] != y.size:
        raise ValueError("X and y differ in length")
    out = [pearson(X[:, i], y) for i in range(X.shape[1])]
    undefined = sum(r is None for r in out)
    if undefined:
        logger.warning("%d dimensions have undefined correlation (constant)", undefined)
    return out


def average_importances(forests: Sequence[ForestModel]) -> np.ndarray:
    """Mean of the forests' normalized 100-dim importances, renormalized to sum 1."""
    if not forests:
        raise ValueError("no forests to average")
    mean = np.mean([f.full_importances() for f in forests], axis=0)
    total = mean.sum()
    return mean / total if total > 0 else np.full(N_DIMS, 1.0 / N_DIMS)


def fold_averaged_forest_importance(data: DeltaDataset, plan: SplitPlan, config: RunConfig | None = None,
                                    fold_run: Optional[FoldRun] = None, n_jobs: int = 1) -> np.ndarray:
    """Importance of the full-layout forest, averaged over the plan's folds.

    ``fold_run`` (a forest ``run_folds`` result) avoids growing the forests twice.
    """
    if fold_run is None:
        fold_run = run_folds("forest", data, plan, config, n_jobs=n_jobs)
    return average_importances(fold_run.models)


def selection_dims(selector: dict[str, Any], mode: str = "only") -> np.ndarray:
    """Dimensions a subset experiment trains on.

    Raises
    ------
    ConfigError
        Bad selector, unknown mode, or a selection leaving zero dimensions.
    """
    try:
        dims = parse_selector(selector)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if mode == "exclude":
        dims = complement(dims)
    elif mode != "only":
        raise ConfigError(f"mode must be 'only' or 'exclude', got {mode!r}")
    if dims.size == 0:
        raise ConfigError(f"{selector_name(selector)} ({mode}) leaves no dimensions")
    return dims


def subset_experiment(data: DeltaDataset, plan: SplitPlan, selector: dict[str, Any], mode: str = "only",
                      config: RunConfig | None = None, n_jobs: int = 1) -> Optional[float]:
    """Test correlation of a forest retrained on the selected (or complement) dimensions."""
    dims = selection_dims(selector, mode)
    return run_folds("forest", data, plan, config, dims, n_jobs).score()[0]


@dataclass
class TypeRow:
    feature_type: str
    importance: float
    correlation: Optional[float]


@dataclass
class PositionRow:
    window: int
    label: str
    correlation: Optional[float]
    importance: float


@dataclass
class SubsetRow:
    name: str
    mode: str
    n_dims: int
    correlation: Optional[float]
    importance: float


def per_type_table(data: DeltaDataset, plan: SplitPlan, importances: np.ndarray,
                   config: RunConfig | None = None, n_jobs: int = 1) -> list[TypeRow]:
    """Summed importance and type-only correlation per base feature, descending by importance."""
    rows = []
    for name in FEATURE_NAMES:
        dims = dims_for_types([name])
        corr = subset_experiment(data, plan, {"types": [name]}, "only", config, n_jobs)
        rows.append(TypeRow(name, float(np.sum(importances[dims])), corr))
    rows.sort(key=lambda r: (-r.importance, FEATURE_NAMES.index(r.feature_type)))
    return rows


def per_position_analysis(data: DeltaDataset, plan: SplitPlan, importances: np.ndarray,
                          config: RunConfig | None = None, n_jobs: int = 1) -> list[PositionRow]:
    """Window-only forest correlation and summed full-model importance for each of the 10 windows."""
    rows = []
    for w in range(N_WINDOWS):
        corr = subset_experiment(data, plan, {"windows": [w]}, "only", config, n_jobs)
        rows.append(PositionRow(w, window_label(w), corr, float(np.sum(importances[dims_for_windows([w])]))))
    return rows


def ablation_table(data: DeltaDataset, plan: SplitPlan, importances: np.ndarray,
                   config: RunConfig | None = None, n_jobs: int = 1) -> list[SubsetRow]:
    """All-but-one-type correlations (``exclude`` each base feature)."""
    rows = []
    for name in FEATURE_NAMES:
        sel = {"types": [name]}
        dims = selection_dims(sel, "exclude")
        rows.append(SubsetRow(selector_name(sel), "exclude", int(dims.size),
                              subset_experiment(data, plan, sel, "exclude", config, n_jobs),
                              float(np.sum(importances[dims]))))
    return rows


# aggregate selections reported next to the per-type rows
AGGREGATE_SELECTIONS: tuple[dict[str, Any], ...] = (
    {"types": ["pitch"], "mode": "only"},
    {"types": ["all"], "mode": "only"},
    {"types": ["speaking_rate", "lengthening"], "mode": "only"},
    {"types": ["speaking_rate"], "mode": "only"},
)


def selection_rows(data: DeltaDataset, plan: SplitPlan, selections: Sequence[dict[str, Any]],
                   importances: np.ndarray, config: RunConfig | None = None,
                   n_jobs: int = 1) -> list[SubsetRow]:
    rows = []
    for sel in selections:
        mode = sel.get("mode", "only")
        dims = selection_dims(sel, mode)
        rows.append(SubsetRow(selector_name(sel), mode, int(dims.size),
                              subset_experiment(data, plan, sel, mode, config, n_jobs),
                              float(np.sum(importances[dims]))))
    return rows


@dataclass
class ImportanceReport:
    """Everything the importance battery produces for one run."""
    per_dimension_correlation: list[Optional[float]]
    per_dimension_forest_importance: np.ndarray
    per_type: list[TypeRow]
    per_position: list[PositionRow]
    ablation: list[SubsetRow]
    subsets: list[SubsetRow] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def type_importance(self, name: str) -> float:
        return next(r.importance for r in self.per_type if r.feature_type == name)

    def pitch_importance(self) -> float:
        return float(sum(self.type_importance(t) for t in PITCH_TYPES))


def importance_battery(data: DeltaDataset, plan: SplitPlan, config: RunConfig | None = None,
                       forest_run: Optional[FoldRun] = None, n_jobs: int = 1) -> ImportanceReport:
    """Run all analyses on one (dataset, split)."""
    cfg = config or RunConfig()
    importances = fold_averaged_forest_importance(data, plan, cfg, forest_run, n_jobs)
    logger.info("importance battery on %d pairs, %d folds", len(data), plan.n_folds)
    extra = list(AGGREGATE_SELECTIONS) + list(cfg.subsets)
    return ImportanceReport(
        per_dimension_correlation=per_dimension_correlations(data.X, data.y),
        per_dimension_forest_importance=importances,
        per_type=per_type_table(data, plan, importances, cfg, n_jobs),
        per_position=per_position_analysis(data, plan, importances, cfg, n_jobs),
        ablation=ablation_table(data, plan, importances, cfg, n_jobs),
        subsets=selection_rows(data, plan, extra, importances, cfg, n_jobs),
        metadata={"split": plan.to_dict(), "forest": cfg.forest.to_dict()},
    )
