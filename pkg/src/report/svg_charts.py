"""
:module: src.report.svg_charts
:synopsis: Minimal SVG line charts (axes, ticks, polylines, legend), no plotting stack.

Two figures are produced per run:

- correlation by position: per-dimension correlation across the 10 windows,
  one line per feature type (the most important types);
- importance by position: window-only model correlation (left axis) and
  summed forest importance (right axis).

Undefined values (``None``) break a line instead of being drawn as 0.
Output is plain text, byte-identical for identical inputs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from src.persistence.json_store import write_text_if_changed

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")

WIDTH, HEIGHT = 960, 560
LEFT, RIGHT, TOP, BOTTOM = 80, 250, 60, 90

Series = tuple[str, Sequence[Optional[float]]]


def _range(series: Sequence[Series]) -> tuple[float, float]:
    vals = [v for _, ys in series for v in ys if v is not None]
    lo, hi = min(vals + [0.0]), max(vals + [0.0])
    if hi - lo < 1e-12:
        hi = lo + 1.0
    pad = 0.08 * (hi - lo)
    return lo - pad, hi + pad


def _tick(v: float) -> str:
    return f"{v:.2f}" if abs(v) < 10 else f"{v:.0f}"


def _segments(xs: Sequence[float], ys: Sequence[Optional[float]]) -> list[list[tuple[float, float]]]:
    segs: list[list[tuple[float, float]]] = [[]]
    for x, y in zip(xs, ys):
        if y is None:
            if segs[-1]:
                segs.append([])
        else:
            segs[-1].append((x, y))
    return [s for s in segs if s]


def line_chart_svg(title: str, x_labels: Sequence[str], x_title: str, left: Sequence[Series],
                   left_title: str, right: Sequence[Series] = (), right_title: str = "") -> str:
    """Render one chart; ``right`` series (if any) use their own y axis."""
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM
    n = len(x_labels)
    if n == 0:
        raise ValueError("no x positions to plot")

    def x_px(i: int) -> float:
        return LEFT + (plot_w / 2 if n == 1 else i * plot_w / (n - 1))

    def scaler(lo: float, hi: float):
        return lambda v: TOP + plot_h - (v - lo) / (hi - lo) * plot_h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
           f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" '
           f'font-family="Arial">{escape(title)}</text>']

    axes = [(left, left_title, LEFT, "end", -8)]
    if right:
        axes.append((right, right_title, LEFT + plot_w, "start", 8))
    color_idx = 0
    legend_y = TOP + 20
    for a, (series, axis_title, ax_x, anchor, dx) in enumerate(axes):
        lo, hi = _range(series)
        y_px = scaler(lo, hi)
        for k in range(6):
            v = lo + (hi - lo) * k / 5
            y = y_px(v)
            if a == 0:
                out.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + plot_w}" y2="{y:.2f}" '
                           f'stroke="#e0e0e0" stroke-width="1"/>')
            out.append(f'<text x="{ax_x + dx}" y="{y + 4:.2f}" text-anchor="{anchor}" font-size="12" '
                       f'font-family="Arial">{_tick(v)}</text>')
        if lo < 0 < hi and a == 0:
            y0 = y_px(0.0)
            out.append(f'<line x1="{LEFT}" y1="{y0:.2f}" x2="{LEFT + plot_w}" y2="{y0:.2f}" '
                       f'stroke="#888888" stroke-dasharray="4 3" stroke-width="1"/>')
        out.append(f'<line x1="{ax_x}" y1="{TOP}" x2="{ax_x}" y2="{TOP + plot_h}" stroke="#000000" stroke-width="2"/>')
        label_x = 24 if a == 0 else LEFT + plot_w + 60
        out.append(f'<text x="{label_x}" y="{TOP + plot_h / 2:.1f}" text-anchor="middle" font-size="14" '
                   f'font-family="Arial" transform="rotate(-90 {label_x} {TOP + plot_h / 2:.1f})">'
                   f'{escape(axis_title)}</text>')

        for name, ys in series:
            color = COLORS[color_idx % len(COLORS)]
            dash = ' stroke-dasharray="8 4"' if a == 1 else ""
            for seg in _segments(range(n), ys):
                pts = " ".join(f"{x_px(i):.2f},{y_px(v):.2f}" for i, v in seg)
                out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2.5"{dash} points="{pts}"/>')
                out += [f'<circle cx="{x_px(i):.2f}" cy="{y_px(v):.2f}" r="3.5" fill="{color}"/>' for i, v in seg]
            lx = LEFT + plot_w + 90
            out.append(f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 24}" y2="{legend_y}" stroke="{color}" '
                       f'stroke-width="3"{dash}/>')
            out.append(f'<text x="{lx + 30}" y="{legend_y + 4}" font-size="12" font-family="Arial">'
                       f'{escape(name)}</text>')
            legend_y += 22
            color_idx += 1

    base = TOP + plot_h
    out.append(f'<line x1="{LEFT}" y1="{base}" x2="{LEFT + plot_w}" y2="{base}" stroke="#000000" stroke-width="2"/>')
    for i, lab in enumerate(x_labels):
        out.append(f'<text x="{x_px(i):.2f}" y="{base + 22}" text-anchor="middle" font-size="12" '
                   f'font-family="Arial">{escape(lab)}</text>')
    out.append(f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - 30}" text-anchor="middle" font-size="14" '
               f'font-family="Arial">{escape(x_title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_chart(path: str | Path, svg: str) -> bool:
    return write_text_if_changed(path, svg)
