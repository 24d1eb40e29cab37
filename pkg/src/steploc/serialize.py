"""Deterministic text output helpers.

Every float is printed with 17 significant digits so that emitted CSV and
JSON round-trip bit-exactly and identical runs produce identical bytes.
Non-finite floats appear as quoted strings in JSON (which has no literal
for them) and as bare ``inf`` / ``nan`` tokens in CSV.
"""

from __future__ import annotations

import math

__all__ = ["fmt_float", "json_dumps"]


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _encode(obj, pieces: list) -> None:
    if obj is None:
        pieces.append("null")
    elif obj is True:
        pieces.append("true")
    elif obj is False:
        pieces.append("false")
    elif isinstance(obj, str):
        pieces.append(_quote(obj))
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, float):
        if math.isfinite(obj):
            pieces.append(fmt_float(obj))
        else:
            pieces.append(_quote(fmt_float(obj)))
    elif isinstance(obj, dict):
        pieces.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                pieces.append(", ")
            pieces.append(_quote(str(key)))
            pieces.append(": ")
            _encode(value, pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, value in enumerate(obj):
            if i:
                pieces.append(", ")
            _encode(value, pieces)
        pieces.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}: {obj!r}")


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _quote(text: str) -> str:
    body = "".join(_ESCAPES.get(ch, ch) for ch in text)
    return f'"{body}"'


def json_dumps(obj) -> str:
    """JSON with insertion-ordered keys and 17-significant-digit floats."""
    pieces: list = []
    _encode(obj, pieces)
    return "".join(pieces)
