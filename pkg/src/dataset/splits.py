"""
:module: src.dataset.splits
:synopsis: Train/test protocols: session holdout, language holdout, shuffled k-fold.

Split generation is a pure function of the records (sorted by pair id
first, so file order does not matter), the kind, ``k`` and the seed.

Notes
-----
- Holdouts default to the two smallest labels in sorted order (so sessions
  ``1`` and ``2`` give "train on 1, test on 2"); other labels are ignored
  with a warning.
- k-fold uses scikit-learn's ``KFold(shuffle=True)`` seeded with ``seed``.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
from sklearn.model_selection import KFold

from src.models.pairs import PairRecord
from src.models.split import SplitPlan
from src.validation.errors import SplitError

logger = logging.getLogger(__name__)

_GROUP_ATTR = {"session-holdout": "session", "language-holdout": "language"}


def _holdout(records: Sequence[PairRecord], kind: str, train_group: Optional[str],
             test_group: Optional[str], seed: int) -> SplitPlan:
    attr = _GROUP_ATTR[kind]
    labels = sorted({getattr(r, attr) for r in records})
    if len(labels) < 2:
        raise SplitError(f"{kind} needs >= 2 distinct {attr} labels, found {labels}")
    train_group = train_group if train_group is not None else labels[0]
    test_group = test_group if test_group is not None else next(l for l in labels if l != train_group)
    for g in (train_group, test_group):
        if g not in labels:
            raise SplitError(f"no pairs with {attr} {g!r} (have {labels})")
    if train_group == test_group:
        raise SplitError(f"train and test {attr} must differ")
    ignored = [l for l in labels if l not in (train_group, test_group)]
    if ignored:
        logger.warning("%s: ignoring pairs with %s %s", kind, attr, ignored)
    train = [r.pair_id for r in records if getattr(r, attr) == train_group]
    test = [r.pair_id for r in records if getattr(r, attr) == test_group]
    return SplitPlan(kind, [(train, test)], seed)


def make_split(records: Sequence[PairRecord], kind: str, k: int = 10, seed: int = 0,
               train_group: Optional[str] = None, test_group: Optional[str] = None) -> SplitPlan:
    """Build the folds of one protocol.

    Parameters
    ----------
    records : sequence of PairRecord
    kind : str
        ``session-holdout``, ``language-holdout`` or ``k-fold``.
    k : int
        Folds for k-fold, ``2 <= k <= n``.
    seed : int
        Shuffle seed for k-fold (recorded for every kind).
    train_group, test_group : str, optional
        Explicit labels for the holdout kinds.

    Raises
    ------
    SplitError
        Too few groups, unknown group, or ``k`` out of range.
    """
    ordered = sorted(records, key=lambda r: r.pair_id)
    if not ordered:
        raise SplitError("no records to split")
    if kind in _GROUP_ATTR:
        return _holdout(ordered, kind, train_group, test_group, seed)
    if kind != "k-fold":
        raise SplitError(f"unknown split kind {kind!r}")
    n = len(ordered)
    if not 2 <= k <= n:
        raise SplitError(f"k must lie in [2, {n}], got {k}")
    ids = np.array([r.pair_id for r in ordered])
    kf = KFold(n_splits=k, shuffle=True, random_state=seed)
    folds = [(ids[tr].tolist(), ids[te].tolist()) for tr, te in kf.split(ids)]
    return SplitPlan(kind, folds, seed)
