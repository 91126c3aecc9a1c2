"""
:module: src.dataset.__init__
:synopsis: Re-exports for manifests, splits, delta datasets and synthetic corpora.
"""

from .deltas import DeltaDataset, build_delta_dataset
from .manifest import REQUIRED_COLUMNS, load_manifest, write_manifest
from .splits import make_split
from .synthetic import synthesize_corpus, synthetic_delta_dataset

__all__ = [
    "DeltaDataset",
    "REQUIRED_COLUMNS",
    "build_delta_dataset",
    "load_manifest",
    "make_split",
    "synthesize_corpus",
    "synthetic_delta_dataset",
    "write_manifest",
]
