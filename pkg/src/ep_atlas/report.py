"""Deterministic JSON and CSV output.

JSON keys are sorted, floats use 17 significant digits, complex numbers are
``[re, im]`` pairs and non-finite floats become ``null``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

__all__ = ["SCHEMA", "to_jsonable", "dumps", "format_float", "bands_table", "write_csv", "write_text"]

SCHEMA = 1


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0"  # collapses -0.0 as well
    return format(x, ".17g")


def to_jsonable(obj: Any) -> Any:
    """Plain Python structure with complex as [re, im] and tuples as lists."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj: Any, out: list, indent: int, level: int) -> None:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," + pad if indent else ", "
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(v is None or isinstance(v, (bool, int, float)) for v in obj):
            # numeric rows stay on one line
            out.append("[")
            for i, v in enumerate(obj):
                if i:
                    out.append(", ")
                _emit(v, out, 0, 0)
            out.append("]")
            return
        out.append("[" + pad)
        for i, v in enumerate(obj):
            if i:
                out.append(sep)
            _emit(v, out, indent, level + 1)
        out.append(end + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{" + pad)
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(sep)
            out.append(json.dumps(key, ensure_ascii=False) + ": ")
            _emit(obj[key], out, indent, level + 1)
        out.append(end + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize to JSON text with sorted keys and 17-digit floats."""
    out: list[str] = []
    _emit(to_jsonable(obj), out, indent, 0)
    return "".join(out) + "\n"


def bands_table(momenta: Sequence[str], points: np.ndarray, eigenvalues: np.ndarray) -> tuple[list, list]:
    """Header and rows: momenta, then Re/Im of each band sorted by (Re, Im)."""
    n = eigenvalues.shape[1]
    header = list(momenta) + [f"{p}_{i + 1}" for i in range(n) for p in ("re", "im")]
    rows = []
    for k, e in zip(points, eigenvalues):
        row = [float(x) for x in k]
        for z in e:
            row += [float(z.real), float(z.imag)]
        rows.append(row)
    return header, rows


def write_csv(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def write_text(path: str | None, text: str, stream=None) -> None:
    """Write to ``path``, or to ``stream`` (stdout) when path is None or '-'."""
    if path in (None, "-"):
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
