"""
:module: tests.test_report
:synopsis: Tests for the SVG charts and the report directory writer.

Notes
-----
- The importance report is assembled by hand so no forests are grown here.
"""

import json

import numpy as np
import pytest

from src.config.settings import RunConfig
from src.dataset import synthetic_delta_dataset
from src.importance import (
    ImportanceReport, PositionRow, SubsetRow, TypeRow, group_scores, model_scores, role_summary,
)
from src.models import SplitPlan
from src.models.layout import FEATURE_NAMES, N_DIMS, window_label
from src.predictors import run_folds
from src.report import MODEL_DIR, RUN_METADATA, correlation_figure, line_chart_svg, write_report


def _report():
    corr = [None if i % 17 == 0 else 0.01 * (i % 10) for i in range(N_DIMS)]
    return ImportanceReport(
        per_dimension_correlation=corr,
        per_dimension_forest_importance=np.full(N_DIMS, 1.0 / N_DIMS),
        per_type=[TypeRow(name, 0.1, 0.05 * i) for i, name in enumerate(FEATURE_NAMES)],
        per_position=[PositionRow(w, window_label(w), None if w == 0 else 0.1 * w, 0.1) for w in range(10)],
        ablation=[SubsetRow(f"types={n}", "exclude", 90, 0.5, 0.9) for n in FEATURE_NAMES],
        subsets=[SubsetRow("types=pitch", "only", 40, None, 0.4)],
    )


def _run_inputs():
    data = synthetic_delta_dataset(n_pairs=40, seed=0)
    plan = SplitPlan("session-holdout", [([p for p, s in zip(data.pair_ids, data.sessions) if s == "1"],
                                          [p for p, s in zip(data.pair_ids, data.sessions) if s == "2"])])
    runs = [run_folds(kind, data, plan) for kind in ("euclidean", "linear")]
    return data, plan, runs


def test_line_chart_breaks_lines_at_missing_values():
    svg = line_chart_svg("t & u", ["a", "b", "c", "d"], "x", [("s", [1.0, None, 2.0, 3.0])], "y")
    assert svg.startswith("<svg") and svg.endswith("</svg>\n")
    assert svg.count("<polyline") == 2
    assert svg.count("<circle") == 3
    assert "t &amp; u" in svg
    with pytest.raises(ValueError):
        line_chart_svg("t", [], "x", [("s", [])], "y")


def test_line_chart_right_axis_is_dashed_and_deterministic():
    args = ("t", ["a", "b"], "x", [("l", [0.1, 0.2])], "r", [("i", [0.5, 0.4])], "imp")
    svg = line_chart_svg(*args)
    assert 'stroke-dasharray="8 4" points=' in svg
    assert svg == line_chart_svg(*args)


def test_correlation_figure_draws_top_types():
    svg = correlation_figure(_report(), top=3)
    assert all(name in svg for name in FEATURE_NAMES[:3])
    assert FEATURE_NAMES[3] not in svg


def test_write_report_files_and_contents(tmp_path):
    data, plan, runs = _run_inputs()
    cfg = RunConfig(manifest_path="m.csv", output_dir=str(tmp_path))
    write_report(tmp_path, cfg, plan, data, model_scores(runs), _report(), group_scores(runs, data),
                 role_summary(data), models=[runs[1].models[0]], skipped={"p9": "missing audio"})
    scores = (tmp_path / "model_scores.csv").read_text().splitlines()
    assert scores[0] == "model,pearson,mse,n_test"
    assert [line.split(",")[0] for line in scores[1:]] == ["euclidean", "linear"]
    assert all(line.endswith(",20") for line in scores[1:])
    dims = (tmp_path / "dimension_correlations.csv").read_text().splitlines()
    assert len(dims) == N_DIMS + 1
    assert dims[1] == "intensity_w0,intensity,0,,0.01"
    positions = (tmp_path / "position_analysis.csv").read_text().splitlines()
    assert positions[1] == "0,0-5%,,0.1"
    assert len((tmp_path / "subset_scores.csv").read_text().splitlines()) == 12
    assert (tmp_path / "fig_importance_by_position.svg").is_file()
    assert (tmp_path / MODEL_DIR / "linear.json").is_file()
    meta = json.loads((tmp_path / RUN_METADATA).read_text())
    assert meta["n_pairs"] == 40
    assert meta["skipped_pairs"] == {"p9": "missing audio"}
    assert meta["config"]["manifest_path"] == "m.csv"
    assert not (tmp_path / "delta_mode_comparison.csv").exists()


def test_write_report_second_run_changes_nothing(tmp_path):
    data, plan, runs = _run_inputs()
    args = (tmp_path, RunConfig(manifest_path="m.csv"), plan, data, model_scores(runs), _report(),
            group_scores(runs, data), role_summary(data))
    first = write_report(*args, comparison=model_scores(runs, "absolute"))
    assert any(p.name == "delta_mode_comparison.csv" for p in first)
    assert write_report(*args, comparison=model_scores(runs, "absolute")) == []


def test_group_scores_per_session_and_language():
    data, plan, runs = _run_inputs()
    rows = group_scores(runs, data)
    kinds = {(r.model, r.group_kind, r.group) for r in rows}
    assert ("linear", "session", "2") in kinds
    assert ("linear", "language", "synth") in kinds
    assert all(r.n_test == 20 for r in rows)
    assert len(role_summary(data)) == len(FEATURE_NAMES)
