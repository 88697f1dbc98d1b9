"""CSV/JSON writers with a fixed, reproducible float format."""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .gaussian import CovarianceMatrix, Ordering

SIG_DIGITS = 12


def fmt(x: float) -> str:
    """Shortest round-trip representation of ``x`` rounded to 12 significant digits."""
    value = float(f"{float(x):.{SIG_DIGITS}g}")
    if value == 0.0:
        value = 0.0  # drop negative zero
    return repr(value)


def _plain(obj: Any) -> Any:
    if isinstance(obj, Mapping):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj))
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "value"):  # enums
        return obj.value
    return str(obj)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_json(path: Path, payload: Mapping[str, Any]) -> Path:
    _atomic_write(Path(path), json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n")
    return Path(path)


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    meta: Mapping[str, Any] | None = None,
) -> Path:
    """CSV with optional leading ``# key=value`` metadata lines."""
    buf = io.StringIO()
    for key in sorted(meta or {}):
        buf.write(f"# {key}={_meta_value((meta or {})[key])}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    _atomic_write(Path(path), buf.getvalue())
    return Path(path)


def _meta_value(v: Any) -> str:
    plain = _plain(v)
    if isinstance(plain, (dict, list)):
        return json.dumps(plain, sort_keys=True)
    return str(plain)


def write_table(path_stem: Path, fmt_name: str, header, rows, meta=None) -> Path:
    """Write ``rows`` as ``<stem>.csv`` or ``<stem>.json`` (a list of records plus ``meta``)."""
    rows = [list(r) for r in rows]
    if fmt_name == "csv":
        return write_csv(Path(f"{path_stem}.csv"), header, rows, meta)
    records = [dict(zip(header, r)) for r in rows]
    return write_json(Path(f"{path_stem}.json"), {"meta": meta or {}, "rows": records})


def covariance_rows(sigma) -> tuple[list[str], list[list[Any]]]:
    labels = sigma.labels()
    rows = [[labels[i]] + [float(v) for v in row] for i, row in enumerate(sigma.data)]
    return ["label"] + labels, rows


def write_covariance(path_stem: Path, fmt_name: str, sigma) -> Path:
    """Row-major CSV with a quadrature-label header, or JSON with dim/ordering/labels/data."""
    if fmt_name == "csv":
        header, rows = covariance_rows(sigma)
        return write_csv(Path(f"{path_stem}.csv"), header, rows, {"ordering": sigma.ordering.value})
    payload = {
        "dim": sigma.dim,
        "ordering": sigma.ordering.value,
        "labels": sigma.labels(),
        "data": sigma.data,
    }
    return write_json(Path(f"{path_stem}.json"), payload)


def read_covariance_json(path: Path) -> CovarianceMatrix:
    payload = json.loads(Path(path).read_text())
    return CovarianceMatrix(np.array(payload["data"], dtype=float), Ordering(payload["ordering"]))
