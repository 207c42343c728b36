"""JSON emission with 17-significant-digit floats.

17 significant decimal digits determine a double uniquely, so files
written here parse back bit-identically and re-serialize to the same
text.  Parsing is plain json.
"""

from __future__ import annotations

import json
import math

loads = json.loads


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialize non-finite float {x}")
    if x == 0.0:  # canonicalize -0.0 so the text round-trips
        return "0"
    return format(x, ".17g")


def dumps(obj, indent: int | None = 2) -> str:
    """Serialize dicts/lists/scalars; floats get 17 significant digits."""
    pieces: list[str] = []
    _write(obj, pieces, indent, 0)
    return "".join(pieces)


def _write(obj, out: list[str], indent: int | None, level: int) -> None:
    if isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        items = [(json.dumps(str(k)) + ": ", v) for k, v in obj.items()]
        _write_items(items, "{", "}", out, indent, level)
    elif isinstance(obj, (list, tuple)):
        _write_items([("", v) for v in obj], "[", "]", out, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_items(items, open_b, close_b, out, indent, level) -> None:
    if not items:
        out.append(open_b + close_b)
        return
    if indent is None:
        head, sep, tail = "", ", ", ""
    else:
        inner = "\n" + " " * (indent * (level + 1))
        head, sep, tail = inner, "," + inner, "\n" + " " * (indent * level)
    out.append(open_b + head)
    for k, (prefix, value) in enumerate(items):
        if k:
            out.append(sep)
        out.append(prefix)
        _write(value, out, indent, level + 1)
    out.append(tail + close_b)
