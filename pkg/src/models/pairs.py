"""
:module: src.models.pairs
:synopsis: UtteranceSpan and PairRecord entities (what a manifest row becomes).

A pair is always one seed utterance (cut from a recorded dialog) and one
re-enactment of it, plus the pre-averaged human similarity judgment.

Notes
-----
- Validation is delegated to ``src.validation.validators`` like the rest of
  the entities; constructors raise ``ValueError`` with a short reason.
- ``channel`` is the optional manifest override of the stereo downmix.
"""

from __future__ import annotations

from typing import Optional

from src.validation.validators import (
    is_non_empty_string, is_non_negative_int, is_valid_judgment, is_valid_label,
    is_valid_pair_id, is_valid_span, norm_id, norm_label,
)


class UtteranceSpan:
    """
    Time interval of one utterance inside a track.

    Parameters
    ----------
    track_path : str
        WAV file holding the utterance.
    start_s, end_s : float
        Seconds; ``0 <= start_s < end_s``.
    channel : int, optional
        Channel to read instead of downmixing (0-based).
    """
    __slots__ = ("track_path", "start_s", "end_s", "channel")

    def __init__(self, track_path: str, start_s: float, end_s: float,
                 channel: Optional[int] = None) -> None:
        if not is_non_empty_string(track_path): raise ValueError("Bad track_path.")
        if not is_valid_span(start_s, end_s): raise ValueError("Span needs 0 <= start < end.")
        if channel is not None and not is_non_negative_int(channel): raise ValueError("Bad channel.")
        self.track_path = str(track_path)
        self.start_s = float(start_s)
        self.end_s = float(end_s)
        self.channel = None if channel is None else int(channel)

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s

    def track_key(self) -> tuple[str, Optional[int]]:
        """Key identifying the decoded track (file + channel choice)."""
        return (self.track_path, self.channel)

    def to_dict(self) -> dict:
        return {"track_path": self.track_path, "start_s": self.start_s,
                "end_s": self.end_s, "channel": self.channel}

    @classmethod
    def from_dict(cls, d: dict) -> "UtteranceSpan":
        return cls(d["track_path"], d["start_s"], d["end_s"], d.get("channel"))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UtteranceSpan) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.track_path, self.start_s, self.end_s, self.channel))

    def __repr__(self) -> str:
        return f"UtteranceSpan({self.track_path!r}, {self.start_s:g}-{self.end_s:g}s)"


class PairRecord:
    """
    One judged seed / re-enactment pair.

    Parameters
    ----------
    pair_id : str
        Unique within a manifest.
    seed, reenactment : UtteranceSpan
    judgment : float
        Mean rating on the 1..5 scale.
    session : str
        Collection session label (drives the session holdout split).
    language : str
        Language / corpus label (report grouping, cross-corpus split).
    """
    __slots__ = ("pair_id", "seed", "reenactment", "judgment", "session", "language")

    def __init__(self, pair_id: str, seed: UtteranceSpan, reenactment: UtteranceSpan,
                 judgment: float, session: str, language: str) -> None:
        if not is_valid_pair_id(pair_id): raise ValueError("Bad pair_id.")
        if not isinstance(seed, UtteranceSpan) or not isinstance(reenactment, UtteranceSpan):
            raise ValueError("seed and reenactment must be UtteranceSpan objects.")
        if not is_valid_judgment(judgment): raise ValueError("judgment must lie in [1, 5].")
        if not is_valid_label(session): raise ValueError("Bad session label.")
        if not is_valid_label(language): raise ValueError("Bad language label.")
        self.pair_id = norm_id(pair_id)
        self.seed = seed
        self.reenactment = reenactment
        self.judgment = float(judgment)
        self.session = norm_label(session)
        self.language = norm_label(language)

    def utterance_ids(self) -> tuple[str, str]:
        return (f"{self.pair_id}:seed", f"{self.pair_id}:reen")

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "seed": self.seed.to_dict(),
            "reenactment": self.reenactment.to_dict(),
            "judgment": self.judgment,
            "session": self.session,
            "language": self.language,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PairRecord":
        return cls(d["pair_id"], UtteranceSpan.from_dict(d["seed"]),
                   UtteranceSpan.from_dict(d["reenactment"]), d["judgment"],
                   d["session"], d["language"])

    def __repr__(self) -> str:
        return f"PairRecord({self.pair_id!r}, judgment={self.judgment:g}, session={self.session!r})"
