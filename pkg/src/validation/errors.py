"""
:module: src.validation.errors
:synopsis: Exception hierarchy shared by the whole toolkit.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can keep a single ``except ValueError`` (same habit as the
domain constructors, which raise plain ``ValueError`` on bad fields).

Notes
-----
- The CLI maps these onto exit codes (see ``src.cli.main``).
- Messages should name the offending file / row / id; the caller usually
  just prints ``str(exc)``.
"""

from __future__ import annotations


class ProsodyToolkitError(ValueError):
    """Base class for all toolkit errors."""


class AudioFormatError(ProsodyToolkitError):
    """Audio could not be decoded (unreadable, unsupported codec, empty).

    Parameters
    ----------
    path : str
        File that failed.
    cause : str
        Short human readable reason.
    """

    def __init__(self, path: str, cause: str) -> None:
        self.path = str(path)
        self.cause = cause
        super().__init__(f"{self.path}: {cause}")


class SignalTooShortError(ProsodyToolkitError):
    """Signal shorter than one analysis frame (or too few frames)."""


class SpanError(ProsodyToolkitError):
    """Utterance span outside its track or too short to tile."""


class ManifestError(ProsodyToolkitError):
    """Pair manifest could not be ingested.

    Parameters
    ----------
    message : str
        What went wrong.
    line : int, optional
        1-based line number in the CSV (header is line 1).
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class SplitError(ProsodyToolkitError):
    """Requested train/test split cannot be built from these records."""


class ModelError(ProsodyToolkitError):
    """Training / prediction / deserialization problem for a predictor."""


class ConfigError(ProsodyToolkitError):
    """Invalid run or extraction configuration."""
