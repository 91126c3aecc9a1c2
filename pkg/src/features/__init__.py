"""
:module: src.features.__init__
:synopsis: Re-exports for base features, normalization, tiling and track extraction.
"""

from .base import base_features
from .pipeline import TrackFeatures, extract_track, extract_tracks, track_keys, utterance_vectors
from .tiling import delta_matrix, delta_vector, normalize_per_track, tile_utterance, tile_values

__all__ = [
    "TrackFeatures",
    "base_features",
    "delta_matrix",
    "delta_vector",
    "extract_track",
    "extract_tracks",
    "normalize_per_track",
    "tile_utterance",
    "tile_values",
    "track_keys",
    "utterance_vectors",
]
