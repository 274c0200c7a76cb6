"""Deterministic JSON emission and input digests for the CLI.

Floats are printed with 17 significant digits so payloads round-trip exactly
and two runs with identical inputs produce byte-identical documents; dict
keys are emitted sorted for the same reason.
"""

from __future__ import annotations

import hashlib
import json
import math

__all__ = ["format_float", "dumps", "sha256_bytes", "sha256_file"]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x} in output document")
    return f"{x:.17g}"


def _emit(obj, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
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
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(inner)
            _emit(item, indent, level + 1, out)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        keys = sorted(obj)
        if any(not isinstance(k, str) for k in keys):
            raise TypeError("document keys must be strings")
        out.append("{\n")
        for i, k in enumerate(keys):
            out.append(inner + json.dumps(k) + ": ")
            _emit(obj[k], indent, level + 1, out)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into an output document")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _emit(obj, indent, 0, out)
    out.append("\n")
    return "".join(out)


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path) -> str:
    with open(path, "rb") as fh:
        return sha256_bytes(fh.read())
