"""
:module: src.models.split
:synopsis: SplitPlan entity: the folds of a train/test protocol.

Notes
-----
- Holdout kinds have one fold; k-fold has k folds whose test sets partition
  all pairs.
- The constructor checks train and test never overlap inside a fold.
"""

from __future__ import annotations

from typing import Sequence

from src.config.settings import SPLIT_KINDS


class SplitPlan:
    """
    Parameters
    ----------
    kind : str
        ``session-holdout``, ``k-fold`` or ``language-holdout``.
    folds : sequence of (train_ids, test_ids)
        Pair ids per fold, each list sorted.
    seed : int
        Shuffle seed (recorded even when unused).
    """
    __slots__ = ("kind", "folds", "seed")

    def __init__(self, kind: str, folds: Sequence[tuple[Sequence[str], Sequence[str]]], seed: int = 0) -> None:
        if kind not in SPLIT_KINDS: raise ValueError(f"Unknown split kind {kind!r}.")
        if not folds: raise ValueError("SplitPlan needs at least one fold.")
        clean: list[tuple[list[str], list[str]]] = []
        for train, test in folds:
            train, test = sorted(train), sorted(test)
            if not train or not test:
                raise ValueError("Every fold needs non-empty train and test sets.")
            if set(train) & set(test):
                raise ValueError("Train and test overlap inside a fold.")
            clean.append((train, test))
        self.kind = kind
        self.folds = clean
        self.seed = int(seed)

    @property
    def n_folds(self) -> int:
        return len(self.folds)

    def all_test_ids(self) -> list[str]:
        return sorted({pid for _, test in self.folds for pid in test})

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "folds": [{"train": train, "test": test} for train, test in self.folds],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SplitPlan":
        return cls(d["kind"], [(f["train"], f["test"]) for f in d["folds"]], d.get("seed", 0))

    def __repr__(self) -> str:
        return f"SplitPlan(kind={self.kind!r}, folds={self.n_folds}, seed={self.seed})"
