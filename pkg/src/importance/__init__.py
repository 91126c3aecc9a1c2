"""
:module: src.importance.__init__
:synopsis: Re-exports for the importance analyses and report tables.
"""

from .analysis import (
    AGGREGATE_SELECTIONS, ImportanceReport, PositionRow, SubsetRow, TypeRow,
    ablation_table, average_importances, fold_averaged_forest_importance, importance_battery,
    per_dimension_correlations, per_position_analysis, per_type_table, selection_dims,
    selection_rows, subset_experiment,
)
from .summaries import GroupScoreRow, RoleRow, ScoreRow, group_scores, model_scores, role_summary

__all__ = [
    "AGGREGATE_SELECTIONS",
    "GroupScoreRow",
    "ImportanceReport",
    "PositionRow",
    "RoleRow",
    "ScoreRow",
    "SubsetRow",
    "TypeRow",
    "ablation_table",
    "average_importances",
    "fold_averaged_forest_importance",
    "group_scores",
    "importance_battery",
    "model_scores",
    "per_dimension_correlations",
    "per_position_analysis",
    "per_type_table",
    "role_summary",
    "selection_dims",
    "selection_rows",
    "subset_experiment",
]
