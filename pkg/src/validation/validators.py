"""
:module: src.validation.validators
:synopsis: Small predicate validators and normalizers used across the toolkit.

Validators return ``bool`` and never raise; the constructors in
``src.models`` call them and raise the actual error. Normalizers do light
cleanup (trimming, canonical ids) so the same pair id or label written
slightly differently in a manifest does not end up as two things.

Notes
-----
- Judgments are the pre-averaged 1..5 ratings from the manifest.
- ``is_finite_array`` is the workhorse for "no NaN/Inf anywhere" checks.
"""

import math
import re
from typing import Any

import numpy as np

# pair ids: letters, digits and a little punctuation, no spaces or commas
PAIR_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.:\-]{0,127}$")
# session / language labels are free text but must be a single short token-ish string
LABEL_RE = re.compile(r"^[^,\n\r]{1,64}$")

JUDGMENT_MIN = 1.0
JUDGMENT_MAX = 5.0


def is_non_empty_string(v: Any) -> bool:
    """Check that ``v`` is a non-empty (non-whitespace-only) string.

    Parameters
    ----------
    v : Any
        Value to check.

    Returns
    -------
    bool
        ``True`` if ``v`` is a non-empty string, else ``False``.
    """
    return isinstance(v, str) and v.strip() != ""


def is_valid_pair_id(v: Any) -> bool:
    """Validate a pair identifier against ``PAIR_ID_RE``."""
    return isinstance(v, str) and bool(PAIR_ID_RE.fullmatch(v.strip()))


def is_valid_label(v: Any) -> bool:
    """Validate a session or language label (non-empty, no commas/newlines)."""
    return isinstance(v, str) and v.strip() != "" and bool(LABEL_RE.fullmatch(v.strip()))


def is_finite_number(v: Any) -> bool:
    """Return True if ``v`` converts to a finite float."""
    try:
        return math.isfinite(float(v))
    except (TypeError, ValueError):
        return False


def is_valid_judgment(v: Any) -> bool:
    """Check a similarity judgment lies on the closed 1..5 scale.

    Parameters
    ----------
    v : Any
        Value to check (anything float-convertible).

    Returns
    -------
    bool
        ``True`` when finite and ``1 <= v <= 5``.
    """
    return is_finite_number(v) and JUDGMENT_MIN <= float(v) <= JUDGMENT_MAX


def is_valid_span(start_s: Any, end_s: Any) -> bool:
    """Check ``0 <= start_s < end_s`` with both ends finite."""
    if not (is_finite_number(start_s) and is_finite_number(end_s)):
        return False
    return 0.0 <= float(start_s) < float(end_s)


def is_positive_int(v: Any) -> bool:
    """Return True for integers (or integral strings) strictly above zero."""
    if isinstance(v, bool):
        return False
    try:
        iv = int(v)
    except (TypeError, ValueError):
        return False
    return iv > 0 and float(v) == iv


def is_non_negative_int(v: Any) -> bool:
    """Return True if ``v`` can be cast to ``int`` and is ``>= 0``."""
    if isinstance(v, bool):
        return False
    try:
        return int(v) >= 0
    except (TypeError, ValueError):
        return False


def is_finite_array(a: Any) -> bool:
    """True when ``a`` is array-like, numeric and has no NaN/Inf entries."""
    try:
        arr = np.asarray(a, dtype=float)
    except (TypeError, ValueError):
        return False
    return bool(np.all(np.isfinite(arr)))


# --- normalization helpers ---

def norm_id(s: str) -> str:
    """Normalize an identifier by trimming surrounding whitespace.

    Pair ids are case sensitive, so only the whitespace goes.
    """
    return s.strip()


def norm_label(s: str) -> str:
    """Normalize a free-text label: trim and squash internal whitespace."""
    return " ".join(s.strip().split())
