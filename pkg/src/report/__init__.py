"""
:module: src.report.__init__
:synopsis: Re-exports for report writing and SVG figures.
"""

from .svg_charts import line_chart_svg, write_chart
from .tables import (
    MODEL_DIR, RUN_METADATA, correlation_figure, importance_figure, run_metadata, write_report,
)

__all__ = [
    "MODEL_DIR",
    "RUN_METADATA",
    "correlation_figure",
    "importance_figure",
    "line_chart_svg",
    "run_metadata",
    "write_chart",
    "write_report",
]
