"""
:module: src.dataset.deltas
:synopsis: Stacked seed / re-enactment vectors, deltas and judgments for modeling.

``DeltaDataset`` keeps the tiled vectors of both roles (so the delta mode can
be switched without re-extraction) together with judgments and group labels,
in ascending pair-id order.
"""

from __future__ import annotations

import logging
from typing import Iterable, Mapping, Sequence

import numpy as np

from src.config.settings import DELTA_MODES
from src.features.tiling import delta_matrix
from src.models.features import FeatureVector
from src.models.layout import N_DIMS
from src.models.pairs import PairRecord

logger = logging.getLogger(__name__)


class DeltaDataset:
    """
    Parameters
    ----------
    pair_ids : sequence of str
        Row ids, unique.
    seeds, reens : array-like
        ``(n, 100)`` tiled vectors of the two roles.
    judgments : array-like
        ``(n,)`` targets.
    sessions, languages : sequence of str
        Group labels per row.
    mode : str
        ``signed`` or ``absolute``; decides ``X``.
    """
    __slots__ = ("pair_ids", "seeds", "reens", "y", "sessions", "languages", "mode", "X")

    def __init__(self, pair_ids: Sequence[str], seeds, reens, judgments,
                 sessions: Sequence[str], languages: Sequence[str], mode: str = "signed") -> None:
        seeds = np.asarray(seeds, dtype=float).reshape(-1, N_DIMS)
        reens = np.asarray(reens, dtype=float).reshape(-1, N_DIMS)
        y = np.asarray(judgments, dtype=float).reshape(-1)
        n = len(pair_ids)
        if not (seeds.shape[0] == reens.shape[0] == y.size == len(sessions) == len(languages) == n):
            raise ValueError("DeltaDataset columns must all have one entry per pair.")
        if len(set(pair_ids)) != n:
            raise ValueError("DeltaDataset pair ids must be unique.")
        if mode not in DELTA_MODES:
            raise ValueError(f"mode must be one of {DELTA_MODES}")
        self.pair_ids = list(pair_ids)
        self.seeds = seeds
        self.reens = reens
        self.y = y
        self.sessions = list(sessions)
        self.languages = list(languages)
        self.mode = mode
        self.X = delta_matrix(seeds, reens, mode)

    def __len__(self) -> int:
        return len(self.pair_ids)

    def index_of(self, ids: Iterable[str]) -> np.ndarray:
        pos = {pid: i for i, pid in enumerate(self.pair_ids)}
        return np.array([pos[pid] for pid in ids if pid in pos], dtype=int)

    def subset(self, ids: Iterable[str]) -> "DeltaDataset":
        """Rows for ``ids`` that exist here (order of this dataset kept)."""
        idx = np.sort(self.index_of(ids))
        return self.take(idx)

    def take(self, idx: np.ndarray) -> "DeltaDataset":
        return DeltaDataset([self.pair_ids[i] for i in idx], self.seeds[idx], self.reens[idx],
                            self.y[idx], [self.sessions[i] for i in idx],
                            [self.languages[i] for i in idx], self.mode)

    def with_mode(self, mode: str) -> "DeltaDataset":
        return DeltaDataset(self.pair_ids, self.seeds, self.reens, self.y,
                            self.sessions, self.languages, mode)

    def __repr__(self) -> str:
        return f"DeltaDataset(n={len(self)}, mode={self.mode!r})"


def build_delta_dataset(records: Iterable[PairRecord], vectors: Mapping[str, FeatureVector],
                        mode: str = "signed") -> DeltaDataset:
    """Join records with their tiled vectors; pairs lacking either vector are skipped."""
    rows = []
    for r in sorted(records, key=lambda r: r.pair_id):
        sid, rid = r.utterance_ids()
        if sid not in vectors or rid not in vectors:
            logger.warning("pair %s has no feature vectors, skipped", r.pair_id)
            continue
        rows.append((r, vectors[sid].values, vectors[rid].values))
    return DeltaDataset(
        [r.pair_id for r, _, _ in rows],
        np.array([s for _, s, _ in rows]).reshape(-1, N_DIMS),
        np.array([e for _, _, e in rows]).reshape(-1, N_DIMS),
        [r.judgment for r, _, _ in rows],
        [r.session for r, _, _ in rows],
        [r.language for r, _, _ in rows],
        mode,
    )
