"""
:module: src.config.__init__
:synopsis: Re-exports of the configuration dataclasses.
"""

from .settings import (
    DELTA_MODES,
    FEATURE_VERSION,
    SPLIT_KINDS,
    ExtractionConfig,
    ForestConfig,
    RunConfig,
)

__all__ = [
    "DELTA_MODES",
    "FEATURE_VERSION",
    "SPLIT_KINDS",
    "ExtractionConfig",
    "ForestConfig",
    "RunConfig",
]
