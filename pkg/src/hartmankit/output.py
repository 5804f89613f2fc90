"""Deterministic report serialisation (JSON and RFC 4180 CSV).

Floats are written in scientific notation with 9 significant digits. JSON
output is produced from values already rounded to that precision, so it
re-parses to exactly the same numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence

SIG_DIGITS = 9


def fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS - 1}e}"


def quantize(obj: Any) -> Any:
    """Round every float in a nested structure to 9 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {str(k): quantize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [quantize(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return quantize(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(obj: Any, indent: int, level: int, out: list) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or (isinstance(obj, float) and not math.isfinite(obj)):
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(k), ensure_ascii=False)}: ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(obj: Any, indent: int = 2) -> str:
    out: list = []
    _emit(quantize(obj), indent, 0, out)
    return "".join(out) + "\n"


def _cell(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return fmt(v) if math.isfinite(v) else ""
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def flatten(obj: Any, prefix: str = "") -> list:
    """``[(dotted_key, value), ...]`` for a nested report, in insertion order."""
    items = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            items.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            items.extend(flatten(v, f"{prefix}[{i}]"))
    else:
        items.append((prefix, obj))
    return items
