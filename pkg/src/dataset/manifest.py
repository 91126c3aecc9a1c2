"""
:module: src.dataset.manifest
:synopsis: Read and validate the pair manifest CSV.

Header (order free, extra columns ignored)::

    pair_id,seed_wav,seed_start,seed_end,reen_wav,reen_start,reen_end,judgment,session,language

Optional ``seed_channel`` / ``reen_channel`` columns pick a channel instead
of downmixing. Relative WAV paths resolve against the manifest's directory.

Notes
-----
- Errors carry the 1-based CSV line number (header is line 1).
- ``write_manifest`` is the inverse used by the synthetic corpus builder.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, Optional

from src.models.pairs import PairRecord, UtteranceSpan
from src.validation.errors import ManifestError
from src.validation.validators import (
    is_finite_number, is_non_empty_string, is_non_negative_int, is_valid_judgment,
    is_valid_label, is_valid_pair_id, is_valid_span, norm_id,
)

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("pair_id", "seed_wav", "seed_start", "seed_end", "reen_wav",
                    "reen_start", "reen_end", "judgment", "session", "language")
CHANNEL_COLUMNS = ("seed_channel", "reen_channel")


def _resolve(base: Path, raw: str) -> str:
    p = Path(raw.strip())
    return str(p if p.is_absolute() else base / p)


def _channel(row: dict, column: str, line: int) -> Optional[int]:
    raw = (row.get(column) or "").strip()
    if not raw:
        return None
    if not is_non_negative_int(raw):
        raise ManifestError(f"{column} must be a non-negative integer, got {raw!r}", line)
    return int(raw)


def _span(row: dict, role: str, base: Path, line: int) -> UtteranceSpan:
    wav = row.get(f"{role}_wav") or ""
    start, end = row.get(f"{role}_start"), row.get(f"{role}_end")
    if not is_non_empty_string(wav):
        raise ManifestError(f"empty {role}_wav", line)
    if not (is_finite_number(start) and is_finite_number(end)):
        raise ManifestError(f"{role} span bounds must be numbers", line)
    if not is_valid_span(start, end):
        raise ManifestError(f"{role} span needs 0 <= start < end, got {start}..{end}", line)
    return UtteranceSpan(_resolve(base, wav), float(start), float(end),
                         _channel(row, f"{role}_channel", line))


def parse_row(row: dict, base: Path, line: int) -> PairRecord:
    """One manifest row to a PairRecord (raises ``ManifestError``)."""
    if None in row or any(row.get(c) is None for c in REQUIRED_COLUMNS):
        raise ManifestError("wrong number of fields", line)
    pid = row["pair_id"]
    if not is_valid_pair_id(pid):
        raise ManifestError(f"bad pair_id {pid!r}", line)
    if not is_valid_judgment(row["judgment"]):
        raise ManifestError(f"pair {norm_id(pid)}: judgment {row['judgment']!r} outside [1, 5]", line)
    for col in ("session", "language"):
        if not is_valid_label(row[col]):
            raise ManifestError(f"pair {norm_id(pid)}: bad {col} label {row[col]!r}", line)
    seed = _span(row, "seed", base, line)
    reen = _span(row, "reen", base, line)
    return PairRecord(pid, seed, reen, float(row["judgment"]), row["session"], row["language"])


def load_manifest(path: str | Path, check_audio: bool = True) -> list[PairRecord]:
    """Parse and validate a manifest.

    Parameters
    ----------
    path : str or Path
        UTF-8 CSV with the header above.
    check_audio : bool
        Fail on referenced WAV files that do not exist. ``extract`` turns this
        off and reports missing files per pair instead.

    Returns
    -------
    list[PairRecord]
        In file order.

    Raises
    ------
    ManifestError
        Missing columns, malformed row, judgment out of range, duplicate
        pair id, or missing audio file.
    """
    p = Path(path)
    if not p.is_file():
        raise ManifestError(f"manifest {p} not found")
    base = p.resolve().parent
    records: list[PairRecord] = []
    seen: dict[str, int] = {}
    with p.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ManifestError(f"missing columns {missing}", 1)
        for row in reader:
            line = reader.line_num
            rec = parse_row(row, base, line)
            if rec.pair_id in seen:
                raise ManifestError(f"duplicate pair_id {rec.pair_id!r} (first on line {seen[rec.pair_id]})", line)
            seen[rec.pair_id] = line
            if check_audio:
                for span in (rec.seed, rec.reenactment):
                    if not Path(span.track_path).is_file():
                        raise ManifestError(f"pair {rec.pair_id}: audio file {span.track_path} not found", line)
            records.append(rec)
    logger.info("loaded %d pairs from %s", len(records), p)
    return records


def write_manifest(path: str | Path, records: Iterable[PairRecord], relative_to: Optional[Path] = None) -> Path:
    """Write records back as manifest CSV (channel columns only when used)."""
    records = list(records)
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with_channels = any(r.seed.channel is not None or r.reenactment.channel is not None for r in records)
    columns = list(REQUIRED_COLUMNS) + (list(CHANNEL_COLUMNS) if with_channels else [])

    def rel(track: str) -> str:
        if relative_to is None:
            return track
        try:
            return str(Path(track).relative_to(relative_to))
        except ValueError:
            return track

    with p.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for r in records:
            row = [r.pair_id, rel(r.seed.track_path), f"{r.seed.start_s:.6f}", f"{r.seed.end_s:.6f}",
                   rel(r.reenactment.track_path), f"{r.reenactment.start_s:.6f}",
                   f"{r.reenactment.end_s:.6f}", f"{r.judgment:.6f}", r.session, r.language]
            if with_channels:
                row += ["" if r.seed.channel is None else r.seed.channel,
                        "" if r.reenactment.channel is None else r.reenactment.channel]
            w.writerow(row)
    return p
