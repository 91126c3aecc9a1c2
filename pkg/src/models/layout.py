"""
:module: src.models.layout
:synopsis: The fixed 10 x 10 feature layout (base feature type x time window).

Position index of a FeatureVector coordinate is ``feature_index * 10 + window_index``.
Labels are ``<feature>_w<window>`` (e.g. ``speaking_rate_w7``).

Notes
-----
- Window edges are percentages of the utterance duration; the ten spans are
  disjoint and cover 0..100.
- ``parse_selector`` turns the small dict form used by configs/CLI into a
  sorted array of dimension indices.
"""

from __future__ import annotations

from typing import Any, Iterable

import numpy as np

FEATURE_NAMES: tuple[str, ...] = (
    "intensity",
    "lengthening",
    "creakiness",
    "speaking_rate",
    "peak_disalignment",
    "cpps",
    "pitch_highness",
    "pitch_lowness",
    "pitch_wideness",
    "pitch_narrowness",
)
N_FEATURES = len(FEATURE_NAMES)

WINDOW_EDGES_PCT: tuple[float, ...] = (0.0, 5.0, 10.0, 20.0, 30.0, 50.0, 70.0, 80.0, 90.0, 95.0, 100.0)
N_WINDOWS = len(WINDOW_EDGES_PCT) - 1
N_DIMS = N_FEATURES * N_WINDOWS

PITCH_TYPES: tuple[str, ...] = ("pitch_highness", "pitch_lowness", "pitch_wideness", "pitch_narrowness")

# named groups usable wherever a list of types is accepted
TYPE_GROUPS: dict[str, tuple[str, ...]] = {
    "pitch": PITCH_TYPES,
    "all": FEATURE_NAMES,
}


def dim_index(feature: str | int, window: int) -> int:
    """Flat index of (feature, window)."""
    f = FEATURE_NAMES.index(feature) if isinstance(feature, str) else int(feature)
    if not (0 <= f < N_FEATURES and 0 <= window < N_WINDOWS):
        raise ValueError(f"no such coordinate ({feature!r}, {window})")
    return f * N_WINDOWS + window


def dim_label(index: int) -> str:
    f, w = divmod(int(index), N_WINDOWS)
    return f"{FEATURE_NAMES[f]}_w{w}"


DIM_LABELS: tuple[str, ...] = tuple(dim_label(i) for i in range(N_DIMS))


def window_label(window: int) -> str:
    """Human label like ``70-80%``."""
    lo, hi = WINDOW_EDGES_PCT[window], WINDOW_EDGES_PCT[window + 1]
    return f"{lo:g}-{hi:g}%"


def expand_types(names: Iterable[str]) -> list[str]:
    """Resolve group aliases and check names; keeps layout order, no duplicates."""
    wanted: set[str] = set()
    for name in names:
        if name in TYPE_GROUPS:
            wanted.update(TYPE_GROUPS[name])
        elif name in FEATURE_NAMES:
            wanted.add(name)
        else:
            raise ValueError(f"unknown feature type {name!r}")
    return [n for n in FEATURE_NAMES if n in wanted]


def dims_for_types(names: Iterable[str]) -> np.ndarray:
    """All 10 window dimensions of each named type, ascending."""
    idx = [FEATURE_NAMES.index(n) * N_WINDOWS + w for n in expand_types(names) for w in range(N_WINDOWS)]
    return np.array(sorted(idx), dtype=int)


def dims_for_windows(windows: Iterable[int]) -> np.ndarray:
    """All 10 feature dimensions of each window, ascending."""
    ws = sorted({int(w) for w in windows})
    for w in ws:
        if not 0 <= w < N_WINDOWS:
            raise ValueError(f"window {w} out of range 0..{N_WINDOWS - 1}")
    idx = [f * N_WINDOWS + w for f in range(N_FEATURES) for w in ws]
    return np.array(sorted(idx), dtype=int)


def complement(dims: np.ndarray) -> np.ndarray:
    """Dimensions of the full layout not in ``dims``."""
    return np.setdiff1d(np.arange(N_DIMS), np.asarray(dims, dtype=int))


def parse_selector(sel: dict[str, Any]) -> np.ndarray:
    """Dimensions selected by ``{"types": [...]}`` or ``{"windows": [...]}``.

    The ``mode`` key is ignored here; callers apply ``complement`` for ``exclude``.

    Raises
    ------
    ValueError
        Neither or both keys given, or an empty / unknown selection.
    """
    has_types, has_windows = "types" in sel, "windows" in sel
    if has_types == has_windows:
        raise ValueError("selector needs exactly one of 'types' or 'windows'")
    values = list(sel["types"] if has_types else sel["windows"])
    if not values:
        raise ValueError("empty selector")
    return dims_for_types(values) if has_types else dims_for_windows(values)


def selector_name(sel: dict[str, Any]) -> str:
    """Short stable label for reports, e.g. ``types=pitch`` or ``windows=7+8``."""
    if "types" in sel:
        return "types=" + "+".join(str(t) for t in sel["types"])
    return "windows=" + "+".join(str(w) for w in sel["windows"])
