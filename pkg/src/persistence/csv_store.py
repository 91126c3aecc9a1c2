"""
:module: src.persistence.csv_store
:synopsis: CSV tables, the per-track feature cache (CSV + JSON sidecar) and vector exports.

Per-track cache layout under a cache directory::

    tracks/<stem>-<key hash>.csv    frame_index,time_s,<10 feature names>
    tracks/<stem>-<key hash>.json   sidecar: source hash, constants, feature version, grid

The sidecar records the sha256 of the source WAV and every extraction
constant; a cache entry is reused only when all of them still match.

Notes
-----
- Cache and vector CSVs store floats with ``repr`` so reading them back is
  exact; report tables use ``.10g``.
- Undefined values (``None``) are written as empty cells.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from src.config.settings import FEATURE_VERSION, ExtractionConfig
from src.features.pipeline import TrackFeatures, TrackKey
from src.models.features import BaseFeatureMatrix, FeatureVector
from src.models.layout import DIM_LABELS, FEATURE_NAMES
from src.models.signal import FrameGrid
from .json_store import load_json, save_json, write_text_if_changed

logger = logging.getLogger(__name__)

TRACK_DIR = "tracks"
VECTOR_FILE = "vectors.csv"


def fmt_float(v: Optional[float], exact: bool = False) -> str:
    if v is None:
        return ""
    v = float(v)
    return repr(v) if exact else format(v, ".10g")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> bool:
    """Write a table (skipped when unchanged); returns whether the file changed."""
    return write_text_if_changed(path, csv_text(header, rows))


def read_csv(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def file_sha256(path: str | Path, chunk: int = 1 << 20) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for block in iter(lambda: fh.read(chunk), b""):
            h.update(block)
    return h.hexdigest()


def track_cache_stem(key: TrackKey) -> str:
    """File stem for a track key, unique per (path, channel)."""
    path, channel = key
    digest = hashlib.sha1(f"{Path(path).resolve()}|{channel}".encode("utf-8")).hexdigest()[:12]
    return f"{Path(path).stem}-{digest}"


def _sidecar(tf: TrackFeatures, source_sha256: str, config: ExtractionConfig) -> dict[str, Any]:
    return {
        "track_path": tf.key[0],
        "channel": tf.key[1],
        "source_sha256": source_sha256,
        "feature_version": FEATURE_VERSION,
        "extraction": config.to_dict(),
        "duration_s": tf.duration_s,
        "grid": tf.matrix.grid.to_dict(),
        "columns": ["frame_index", "time_s", *FEATURE_NAMES],
    }


def write_track_cache(cache_dir: str | Path, tf: TrackFeatures, source_sha256: str,
                      config: ExtractionConfig) -> bool:
    """Write one track's normalized features and sidecar; ``True`` if anything changed."""
    base = Path(cache_dir) / TRACK_DIR / track_cache_stem(tf.key)
    times = tf.matrix.grid.center_times()
    rows = ([i, fmt_float(times[i], exact=True), *(fmt_float(v, exact=True) for v in tf.matrix.values[:, i])]
            for i in range(tf.matrix.n_frames))
    changed = write_csv(base.with_suffix(".csv"), ["frame_index", "time_s", *FEATURE_NAMES], rows)
    changed |= save_json(base.with_suffix(".json"), _sidecar(tf, source_sha256, config))
    return changed


def cache_is_current(cache_dir: str | Path, key: TrackKey, source_sha256: str,
                     config: ExtractionConfig) -> bool:
    base = Path(cache_dir) / TRACK_DIR / track_cache_stem(key)
    if not (base.with_suffix(".csv").is_file() and base.with_suffix(".json").is_file()):
        return False
    try:
        meta = load_json(base.with_suffix(".json"))
    except ValueError:
        return False
    return (meta.get("source_sha256") == source_sha256
            and meta.get("feature_version") == FEATURE_VERSION
            and meta.get("extraction") == config.to_dict())


def read_track_cache(cache_dir: str | Path, key: TrackKey) -> TrackFeatures:
    """Rebuild TrackFeatures from a cache entry (caller checks freshness first)."""
    base = Path(cache_dir) / TRACK_DIR / track_cache_stem(key)
    meta = load_json(base.with_suffix(".json"))
    rows = read_csv(base.with_suffix(".csv"))
    values = np.array([[float(r[name]) for r in rows] for name in FEATURE_NAMES]).reshape(len(FEATURE_NAMES), -1)
    grid = FrameGrid.from_dict(meta["grid"])
    return TrackFeatures(key, BaseFeatureMatrix(values, grid, normalized=True), meta["duration_s"])


def write_vectors(path: str | Path, vectors: Mapping[str, FeatureVector]) -> bool:
    """Utterance vectors as ``utterance_id,<100 labels>``, rows sorted by id."""
    rows = ([uid, *(fmt_float(v, exact=True) for v in vectors[uid].values)] for uid in sorted(vectors))
    return write_csv(path, ["utterance_id", *DIM_LABELS], rows)


def read_vectors(path: str | Path) -> dict[str, FeatureVector]:
    out = {}
    for row in read_csv(path):
        uid = row["utterance_id"]
        out[uid] = FeatureVector([float(row[label]) for label in DIM_LABELS], uid)
    return out
