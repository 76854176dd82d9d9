"""Dataset CSV files and FigureTable serialization.

All text is UTF-8, comma separated, '.' decimal point, '\\n' line endings.
Dataset numbers are written in shortest round-trip form so a written file
parses back to identical samples; FigureTable CSVs use 6 significant digits
and FigureTable JSON keeps full precision.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path
from typing import Iterable, TextIO, Union

from .experiments import ROW_COLUMNS, FigureTable
from .model import Sample

DATASET_COLUMNS = ("environment", "tx_height_class", "frequency_ghz", "distance_m", "path_loss_db", "link_state")
FORMAT_VERSION = 1


class DatasetError(ValueError):
    """A dataset file failed validation."""


def _parse_number(text: str, line: int, name: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(f"line {line}: field {name!r} is not a number: {text!r}") from None
    if not math.isfinite(value):
        raise DatasetError(f"line {line}: field {name!r} must be finite, got {text!r}")
    return value


def read_dataset(source: Union[str, Path, TextIO]) -> list:
    """Parse a dataset CSV from a path or an open text stream.

    Errors carry the 1-based line number and the offending field.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return _parse(fh, str(source))
    return _parse(source, getattr(source, "name", "<stream>"))


def parse_dataset_text(text: str) -> list:
    return _parse(io.StringIO(text), "<text>")


def _parse(fh: TextIO, origin: str) -> list:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError(f"{origin}: file is empty; expected header {','.join(DATASET_COLUMNS)}") from None
    if tuple(h.strip() for h in header) != DATASET_COLUMNS:
        raise DatasetError(
            f"{origin}: malformed header; expected {','.join(DATASET_COLUMNS)} but found {','.join(header)}"
        )
    samples = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(DATASET_COLUMNS):
            raise DatasetError(
                f"{origin}: line {line}: expected {len(DATASET_COLUMNS)} fields, found {len(row)}"
            )
        env, tx, f, d, pl, state = (c.strip() for c in row)
        freq = _parse_number(f, line, "frequency_ghz")
        dist = _parse_number(d, line, "distance_m")
        loss = _parse_number(pl, line, "path_loss_db")
        for name, value, ok in (
            ("environment", env, bool(env)),
            ("tx_height_class", tx, tx in ("low", "high")),
            ("frequency_ghz", f, freq > 0),
            ("distance_m", d, dist > 0),
            ("link_state", state, state in ("LOS", "NLOS")),
        ):
            if not ok:
                raise DatasetError(f"{origin}: line {line}: invalid {name} value {value!r}")
        samples.append(Sample(freq, dist, loss, env, tx, state))
    if not samples:
        raise DatasetError(f"{origin}: no data rows after the header")
    return samples


def dataset_to_text(samples: Iterable[Sample]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DATASET_COLUMNS)
    for s in samples:
        writer.writerow(
            [s.environment, s.tx_height_class, repr(s.frequency_ghz), repr(s.distance_m),
             repr(s.path_loss_db), s.link_state]
        )
    return buf.getvalue()


def write_dataset(samples: Iterable[Sample], path: Union[str, Path]):
    Path(path).write_bytes(dataset_to_text(samples).encode("utf-8"))


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _fmt6(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.6g}"


def table_metadata(table: FigureTable, input_digest: str = "") -> dict:
    meta = {"format_version": FORMAT_VERSION, "kind": table.kind}
    meta.update(table.parameters)
    meta["input_sha256"] = input_digest
    meta["warnings"] = list(table.warnings)
    return meta


def table_to_csv(table: FigureTable, input_digest: str = "") -> str:
    """CSV with a ``#``-prefixed metadata preamble, then the header and rows.

    An unavailable ABG fit leaves its cells empty.
    """
    buf = io.StringIO()
    for key, value in table_metadata(table, input_digest).items():
        buf.write(f"# {key}: {json.dumps(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_COLUMNS)
    for row in table.rows:
        writer.writerow([_fmt6(v) for v in row.values()])
    return buf.getvalue()


def table_to_json(table: FigureTable, input_digest: str = "") -> str:
    doc = {
        "metadata": table_metadata(table, input_digest),
        "rows": [dict(zip(ROW_COLUMNS, row.values())) for row in table.rows],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def read_table_csv(text: str) -> tuple:
    """Inverse of :func:`table_to_csv`: ``(metadata, rows)`` with rows as dicts of strings."""
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = json.loads(value)
        else:
            body.append(line)
    rows = list(csv.DictReader(body))
    return meta, rows


def render_table(table: FigureTable, fmt: str, input_digest: str = "") -> str:
    if fmt == "csv":
        return table_to_csv(table, input_digest)
    if fmt == "json":
        return table_to_json(table, input_digest)
    raise ValueError(f"unknown table format {fmt!r}; expected csv or json")

