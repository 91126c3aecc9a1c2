"""
:module: src.persistence.json_store
:synopsis: JSON persistence for models, split plans and run metadata.

All documents are written the same way: UTF-8, ``indent=2``, sorted keys,
trailing newline, through ``<path>.tmp`` + ``replace`` so a crash never
leaves a half-written file. A write whose content equals what is already on
disk is skipped, which keeps re-runs from touching files.

Notes
-----
- Floats go through ``json`` (shortest round-trip repr), so a model read
  back predicts exactly like the one written.
- ``_SCHEMA_VERSION`` is stamped into every document.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from src.models.split import SplitPlan
from src.predictors.base import TrainedModel
from src.predictors.evaluation import model_from_dict
from src.validation.errors import ModelError, SplitError

_SCHEMA_VERSION = 1


def dumps_json(data: Any) -> str:
    """Canonical text form used for every JSON file."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def write_text_if_changed(path: str | Path, text: str) -> bool:
    """Atomically write ``text`` unless the file already holds exactly it.

    Returns
    -------
    bool
        ``True`` when the file was (re)written.
    """
    p = Path(path)
    if p.is_file() and p.read_text(encoding="utf-8") == text:
        return False
    p.parent.mkdir(parents=True, exist_ok=True)
    tmp = p.with_suffix(p.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="")
    tmp.replace(p)
    return True


def save_json(path: str | Path, data: dict[str, Any]) -> bool:
    """Stamp the schema version and write ``data`` (skipped when unchanged)."""
    doc = dict(data)
    doc.setdefault("schema_version", _SCHEMA_VERSION)
    return write_text_if_changed(path, dumps_json(doc))


def load_json(path: str | Path) -> dict[str, Any]:
    p = Path(path)
    data = json.loads(p.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{p}: expected a JSON object")
    return data


def save_model(path: str | Path, model: TrainedModel) -> bool:
    return save_json(path, model.to_dict())


def load_model(path: str | Path) -> TrainedModel:
    """Read a model document.

    Raises
    ------
    ModelError
        Missing file, invalid JSON, or a malformed / unknown model.
    """
    try:
        data = load_json(path)
    except FileNotFoundError:
        raise ModelError(f"model file {path} not found") from None
    except ValueError as exc:
        raise ModelError(f"{path}: not a model document ({exc})") from exc
    data.pop("schema_version", None)
    return model_from_dict(data)


def save_split(path: str | Path, plan: SplitPlan) -> bool:
    return save_json(path, plan.to_dict())


def load_split(path: str | Path) -> SplitPlan:
    try:
        data = load_json(path)
        return SplitPlan.from_dict(data)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise SplitError(f"{path}: unreadable split plan ({exc})") from exc
