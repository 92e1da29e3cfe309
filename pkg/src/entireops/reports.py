"""JSON run reports and CSV sidecars.

JSON cannot hold non-finite floats or complex numbers, so ``to_jsonable``
writes ``inf``/``-inf``/``nan`` as strings and complex values as ``[re, im]``.
CSV cells use ``repr`` of floats, which round-trips exactly.
"""

from __future__ import annotations

import csv
import json
import math
import platform
import sys
import time
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np
import scipy

REPORT_SCHEMA = "entireops.report"
REPORT_VERSION = 1
CSV_VERSION = 1


def to_jsonable(obj):
    """Recursively convert numpy/complex/enum values into plain JSON types."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        if c.imag == 0:
            return to_jsonable(c.real)
        return [to_jsonable(c.real), to_jsonable(c.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj


def decode_float(v) -> float:
    """Inverse of the float encoding used by :func:`to_jsonable`."""
    return float(v)


def versions() -> dict:
    from . import __version__

    return {
        "entireops": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


def build_report(command: str, config_doc: dict, results: dict, verdict: str, exit_code: int, started: float) -> dict:
    """Assemble the report document; everything except ``timestamp`` is deterministic."""
    return {
        "schema": REPORT_SCHEMA,
        "schema_version": REPORT_VERSION,
        "command": command,
        "config": config_doc,
        "results": to_jsonable(results),
        "verdict": verdict,
        "exit_code": exit_code,
        "versions": versions(),
        "timestamp": {
            "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "wall_clock_seconds": round(time.perf_counter() - started, 3),
        },
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path, doc: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(doc))
    return path


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    return str(v)


def write_csv(path, columns: dict) -> Path:
    """Write equal-length columns with a header row; returns the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    names = list(columns)
    lengths = {len(columns[k]) for k in names}
    if len(lengths) > 1:
        raise ValueError(f"CSV columns have unequal lengths: { {k: len(columns[k]) for k in names} }")
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in zip(*(columns[k] for k in names)):
            w.writerow([_cell(v) for v in row])
    return path


def read_csv(path) -> dict:
    """Columns of a sidecar as lists of floats (ints stay ints)."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    names, body = rows[0], rows[1:]
    out = {k: [] for k in names}
    for row in body:
        for k, cell in zip(names, row):
            try:
                out[k].append(int(cell))
            except ValueError:
                out[k].append(float(cell))
    return out


def log(msg: str, quiet: bool = False):
    if not quiet:
        print(msg, file=sys.stderr)
