"""
:module: src.importance.summaries
:synopsis: Secondary report tables: model scores, per-group scores, seed vs re-enactment summary.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.dataset.deltas import DeltaDataset
from src.models.layout import FEATURE_NAMES, dims_for_types
from src.predictors.evaluation import FoldRun, mse, pearson

logger = logging.getLogger(__name__)

MIN_GROUP_PAIRS = 3


@dataclass
class ScoreRow:
    model: str
    pearson: Optional[float]
    mse: float
    n_test: int
    delta_mode: str = "signed"


@dataclass
class GroupScoreRow:
    model: str
    group_kind: str
    group: str
    n_test: int
    pearson: Optional[float]
    mse: float


@dataclass
class RoleRow:
    feature_type: str
    seed_mean: float
    seed_sd: float
    reen_mean: float
    reen_sd: float


def model_scores(runs: Sequence[FoldRun], delta_mode: str = "signed") -> list[ScoreRow]:
    rows = []
    for run in runs:
        r, m = run.score()
        rows.append(ScoreRow(run.kind, r, m, len(run.pair_ids), delta_mode))
    return rows


def group_scores(runs: Sequence[FoldRun], data: DeltaDataset) -> list[GroupScoreRow]:
    """Scores per language and per session of the pooled test pairs.

    Groups with fewer than 3 test pairs are skipped.
    """
    labels = {
        "language": dict(zip(data.pair_ids, data.languages)),
        "session": dict(zip(data.pair_ids, data.sessions)),
    }
    rows = []
    for run in runs:
        for kind, by_id in labels.items():
            groups = sorted({by_id[p] for p in run.pair_ids})
            for g in groups:
                ids = [p for p in run.pair_ids if by_id[p] == g]
                if len(ids) < MIN_GROUP_PAIRS:
                    logger.info("group %s=%s has %d test pairs, skipped", kind, g, len(ids))
                    continue
                pred, tgt = run.predictions_for(ids)
                rows.append(GroupScoreRow(run.kind, kind, g, len(ids), pearson(pred, tgt), mse(pred, tgt)))
    return rows


def role_summary(data: DeltaDataset) -> list[RoleRow]:
    """Mean / sd of the tiled values of each base feature, seeds vs re-enactments."""
    rows = []
    for name in FEATURE_NAMES:
        dims = dims_for_types([name])
        s = data.seeds[:, dims].reshape(-1)
        r = data.reens[:, dims].reshape(-1)
        rows.append(RoleRow(name, float(np.mean(s)), float(np.std(s)),
                            float(np.mean(r)), float(np.std(r))))
    return rows
