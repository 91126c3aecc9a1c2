"""
:module: src.report.tables
:synopsis: Writes one run's report directory (CSV tables, SVG figures, run metadata, models).

Directory layout::

    model_scores.csv               model,pearson,mse,n_test
    type_importance.csv            type,importance,correlation (descending importance)
    dimension_correlations.csv     dimension,feature,window,correlation,importance
    position_analysis.csv          window,label,correlation,importance
    subset_scores.csv              name,mode,n_dims,correlation,importance
    group_scores.csv               model,group_kind,group,n_test,pearson,mse
    role_summary.csv               type,seed_mean,seed_sd,reen_mean,reen_sd
    delta_mode_comparison.csv      model,delta_mode,pearson,mse,n_test (optional)
    fig_correlation_by_position.svg
    fig_importance_by_position.svg
    run_metadata.json
    models/<kind>.json

Notes
-----
- Every writer skips files whose content would not change, so a re-run with
  the same inputs leaves the directory untouched.
- ``run_metadata.json`` holds no timestamps; its ``config`` block is a
  complete ``RunConfig`` and can be passed back to ``experiment --config``.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

from src.config.settings import FEATURE_VERSION, RunConfig
from src.dataset.deltas import DeltaDataset
from src.importance.analysis import ImportanceReport
from src.importance.summaries import GroupScoreRow, RoleRow, ScoreRow
from src.models.layout import DIM_LABELS, FEATURE_NAMES, N_WINDOWS, window_label
from src.models.split import SplitPlan
from src.persistence.csv_store import fmt_float, write_csv
from src.persistence.json_store import save_json, save_model
from src.predictors.base import TrainedModel
from .svg_charts import line_chart_svg, write_chart

logger = logging.getLogger(__name__)

MODEL_SCORES = "model_scores.csv"
TYPE_IMPORTANCE = "type_importance.csv"
DIMENSION_CORRELATIONS = "dimension_correlations.csv"
POSITION_ANALYSIS = "position_analysis.csv"
SUBSET_SCORES = "subset_scores.csv"
GROUP_SCORES = "group_scores.csv"
ROLE_SUMMARY = "role_summary.csv"
DELTA_MODE_COMPARISON = "delta_mode_comparison.csv"
FIG_CORRELATION = "fig_correlation_by_position.svg"
FIG_IMPORTANCE = "fig_importance_by_position.svg"
RUN_METADATA = "run_metadata.json"
MODEL_DIR = "models"

# number of feature types drawn in the correlation figure
TOP_TYPES_IN_FIGURE = 5


def write_model_scores(path: Path, rows: Sequence[ScoreRow]) -> bool:
    return write_csv(path, ["model", "pearson", "mse", "n_test"],
                     ([r.model, fmt_float(r.pearson), fmt_float(r.mse), r.n_test] for r in rows))


def write_delta_mode_comparison(path: Path, rows: Sequence[ScoreRow]) -> bool:
    return write_csv(path, ["model", "delta_mode", "pearson", "mse", "n_test"],
                     ([r.model, r.delta_mode, fmt_float(r.pearson), fmt_float(r.mse), r.n_test] for r in rows))


def write_type_importance(path: Path, report: ImportanceReport) -> bool:
    return write_csv(path, ["type", "importance", "correlation"],
                     ([r.feature_type, fmt_float(r.importance), fmt_float(r.correlation)]
                      for r in report.per_type))


def write_dimension_correlations(path: Path, report: ImportanceReport) -> bool:
    imp = report.per_dimension_forest_importance
    rows = ([DIM_LABELS[i], FEATURE_NAMES[i // N_WINDOWS], i % N_WINDOWS,
             fmt_float(report.per_dimension_correlation[i]), fmt_float(imp[i])]
            for i in range(len(DIM_LABELS)))
    return write_csv(path, ["dimension", "feature", "window", "correlation", "importance"], rows)


def write_position_analysis(path: Path, report: ImportanceReport) -> bool:
    return write_csv(path, ["window", "label", "correlation", "importance"],
                     ([r.window, r.label, fmt_float(r.correlation), fmt_float(r.importance)]
                      for r in report.per_position))


def write_subset_scores(path: Path, report: ImportanceReport) -> bool:
    rows = list(report.ablation) + list(report.subsets)
    return write_csv(path, ["name", "mode", "n_dims", "correlation", "importance"],
                     ([r.name, r.mode, r.n_dims, fmt_float(r.correlation), fmt_float(r.importance)]
                      for r in rows))


def write_group_scores(path: Path, rows: Sequence[GroupScoreRow]) -> bool:
    return write_csv(path, ["model", "group_kind", "group", "n_test", "pearson", "mse"],
                     ([r.model, r.group_kind, r.group, r.n_test, fmt_float(r.pearson), fmt_float(r.mse)]
                      for r in rows))


def write_role_summary(path: Path, rows: Sequence[RoleRow]) -> bool:
    return write_csv(path, ["type", "seed_mean", "seed_sd", "reen_mean", "reen_sd"],
                     ([r.feature_type, fmt_float(r.seed_mean), fmt_float(r.seed_sd),
                       fmt_float(r.reen_mean), fmt_float(r.reen_sd)] for r in rows))


def correlation_figure(report: ImportanceReport, top: int = TOP_TYPES_IN_FIGURE) -> str:
    """Per-dimension correlation across the windows for the most important types."""
    x_labels = [window_label(w) for w in range(N_WINDOWS)]
    series = []
    for row in report.per_type[:top]:
        f = FEATURE_NAMES.index(row.feature_type)
        series.append((row.feature_type,
                       report.per_dimension_correlation[f * N_WINDOWS:(f + 1) * N_WINDOWS]))
    return line_chart_svg("Single-dimension correlation with judgments", x_labels,
                          "position in utterance", series, "Pearson r")


def importance_figure(report: ImportanceReport) -> str:
    """Window-only model correlation (left axis) against summed importance (right axis)."""
    x_labels = [r.label for r in report.per_position]
    return line_chart_svg(
        "Informativeness by position", x_labels, "position in utterance",
        [("window-only model r", [r.correlation for r in report.per_position])], "Pearson r",
        [("summed forest importance", [r.importance for r in report.per_position])], "importance",
    )


def run_metadata(config: RunConfig, plan: SplitPlan, n_pairs: int,
                 skipped: Optional[Mapping[str, str]] = None) -> dict[str, Any]:
    return {
        "config": config.to_dict(),
        "feature_version": FEATURE_VERSION,
        "n_pairs": n_pairs,
        "seeds": {"split": plan.seed, "forest": config.forest.rng_seed},
        "skipped_pairs": dict(sorted((skipped or {}).items())),
        "split": plan.to_dict(),
    }


def write_report(run_dir: str | Path, config: RunConfig, plan: SplitPlan, data: DeltaDataset,
                 scores: Sequence[ScoreRow], report: ImportanceReport,
                 groups: Sequence[GroupScoreRow], roles: Sequence[RoleRow],
                 models: Iterable[TrainedModel] = (), comparison: Sequence[ScoreRow] = (),
                 skipped: Optional[Mapping[str, str]] = None) -> list[Path]:
    """Write the whole report directory; returns the files that changed."""
    out = Path(run_dir)
    out.mkdir(parents=True, exist_ok=True)
    writes = [
        (out / MODEL_SCORES, lambda p: write_model_scores(p, scores)),
        (out / TYPE_IMPORTANCE, lambda p: write_type_importance(p, report)),
        (out / DIMENSION_CORRELATIONS, lambda p: write_dimension_correlations(p, report)),
        (out / POSITION_ANALYSIS, lambda p: write_position_analysis(p, report)),
        (out / SUBSET_SCORES, lambda p: write_subset_scores(p, report)),
        (out / GROUP_SCORES, lambda p: write_group_scores(p, groups)),
        (out / ROLE_SUMMARY, lambda p: write_role_summary(p, roles)),
        (out / FIG_CORRELATION, lambda p: write_chart(p, correlation_figure(report))),
        (out / FIG_IMPORTANCE, lambda p: write_chart(p, importance_figure(report))),
        (out / RUN_METADATA, lambda p: save_json(p, run_metadata(config, plan, len(data), skipped))),
    ]
    if comparison:
        writes.append((out / DELTA_MODE_COMPARISON, lambda p: write_delta_mode_comparison(p, comparison)))
    for model in models:
        writes.append((out / MODEL_DIR / f"{model.kind}.json", lambda p, m=model: save_model(p, m)))
    changed = [path for path, write in writes if write(path)]
    logger.info("report in %s: %d of %d files changed", out, len(changed), len(writes))
    return changed
