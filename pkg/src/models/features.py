"""
:module: src.models.features
:synopsis: Per-frame base feature matrix and the 100-dim tiled FeatureVector.

Notes
-----
- Row order of ``BaseFeatureMatrix.values`` follows ``layout.FEATURE_NAMES``.
- ``FeatureVector`` values are indexed ``feature_index * 10 + window_index``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.validation.validators import is_finite_array
from .layout import DIM_LABELS, FEATURE_NAMES, N_DIMS, N_FEATURES, N_WINDOWS, dim_index
from .signal import FrameGrid


class BaseFeatureMatrix:
    """
    The 10 base features for every frame of one track.

    Parameters
    ----------
    values : array-like
        Shape ``(10, n_frames)``, all finite.
    grid : FrameGrid
        Time base the columns refer to.
    normalized : bool
        Whether per-track z-normalization was applied.
    """
    __slots__ = ("values", "grid", "normalized")

    def __init__(self, values, grid: FrameGrid, normalized: bool = False) -> None:
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != N_FEATURES:
            raise ValueError(f"BaseFeatureMatrix needs shape (10, n_frames), got {arr.shape}.")
        if arr.shape[1] != grid.n_frames:
            raise ValueError("BaseFeatureMatrix columns must match grid.n_frames.")
        if not is_finite_array(arr):
            raise ValueError("BaseFeatureMatrix values must be finite.")
        self.values = arr
        self.grid = grid
        self.normalized = bool(normalized)

    @property
    def n_frames(self) -> int:
        return int(self.values.shape[1])

    def row(self, name: str) -> np.ndarray:
        return self.values[FEATURE_NAMES.index(name)]

    def as_dict(self) -> dict[str, np.ndarray]:
        return {name: self.values[i] for i, name in enumerate(FEATURE_NAMES)}


class FeatureVector:
    """
    Tiled representation of one utterance (10 features x 10 windows).

    Parameters
    ----------
    values : array-like
        Exactly 100 finite reals.
    utterance_id : str, optional
        Free-form id (``<pair_id>:seed`` in the pipeline).
    """
    __slots__ = ("values", "utterance_id")

    def __init__(self, values, utterance_id: Optional[str] = None) -> None:
        arr = np.array(values, dtype=np.float64).reshape(-1)
        if arr.size != N_DIMS:
            raise ValueError(f"FeatureVector needs {N_DIMS} values, got {arr.size}.")
        if not is_finite_array(arr):
            raise ValueError("FeatureVector values must be finite.")
        arr.flags.writeable = False
        self.values = arr
        self.utterance_id = utterance_id

    def get(self, feature: str, window: int) -> float:
        return float(self.values[dim_index(feature, window)])

    def as_matrix(self) -> np.ndarray:
        """Values reshaped to ``(10 features, 10 windows)``."""
        return self.values.reshape(N_FEATURES, N_WINDOWS)

    def to_dict(self) -> dict[str, float]:
        return {label: float(v) for label, v in zip(DIM_LABELS, self.values)}

    @classmethod
    def from_dict(cls, d: dict, utterance_id: Optional[str] = None) -> "FeatureVector":
        return cls([float(d[label]) for label in DIM_LABELS], utterance_id)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FeatureVector) and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"FeatureVector(id={self.utterance_id!r})"
