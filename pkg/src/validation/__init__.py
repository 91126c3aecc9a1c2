"""
:module: src.validation.__init__
:synopsis: Convenience re-exports for validation helpers and toolkit errors.

Other modules can write ``from src.validation import is_valid_judgment,
ManifestError`` instead of reaching into the submodules.

Notes
-----
- Explicit ``__all__`` so docs + linters know the public API.
- Purely an aggregator; no logic lives here.
"""

from .errors import (
    AudioFormatError,
    ConfigError,
    ManifestError,
    ModelError,
    ProsodyToolkitError,
    SignalTooShortError,
    SpanError,
    SplitError,
)
from .validators import (
    is_finite_array,
    is_finite_number,
    is_non_empty_string,
    is_non_negative_int,
    is_positive_int,
    is_valid_judgment,
    is_valid_label,
    is_valid_pair_id,
    is_valid_span,
    norm_id,
    norm_label,
)

__all__ = [
    "AudioFormatError",
    "ConfigError",
    "ManifestError",
    "ModelError",
    "ProsodyToolkitError",
    "SignalTooShortError",
    "SpanError",
    "SplitError",
    "is_finite_array",
    "is_finite_number",
    "is_non_empty_string",
    "is_non_negative_int",
    "is_positive_int",
    "is_valid_judgment",
    "is_valid_label",
    "is_valid_pair_id",
    "is_valid_span",
    "norm_id",
    "norm_label",
]
