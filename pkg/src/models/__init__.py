"""
:module: models.__init__
:synopsis: Convenience re-exports for the domain entities.

Lets other modules write ``from src.models import PairRecord, FeatureVector``
instead of digging into individual files.

Notes
-----
- Import aggregator only, no logic.
- The fixed feature layout lives in ``src.models.layout`` and is imported
  from there directly (it is mostly constants).
"""

from .audio import AudioBuffer
from .features import BaseFeatureMatrix, FeatureVector
from .pairs import PairRecord, UtteranceSpan
from .signal import FrameGrid, PitchTrack
from .split import SplitPlan

__all__ = [
    "AudioBuffer",
    "BaseFeatureMatrix",
    "FeatureVector",
    "FrameGrid",
    "PairRecord",
    "PitchTrack",
    "SplitPlan",
    "UtteranceSpan",
]
