"""Shared helpers for the grammar adapters."""

from __future__ import annotations

import json
import math

from ..errors import MalformedSpec
from ..model import ColumnKind


def load_json_object(text: str, what: str) -> dict:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedSpec(f"{what}: not valid JSON ({exc})") from exc
    if not isinstance(obj, dict):
        raise MalformedSpec(f"{what}: top level must be a JSON object")
    return obj


def title_text(value: object) -> str | None:
    """Titles appear either as plain strings or as ``{"text": ...}`` objects."""
    if isinstance(value, str):
        return value if value.strip() else None
    if isinstance(value, dict):
        inner = value.get("text")
        if isinstance(inner, str) and inner.strip():
            return inner
    return None


def is_number(cell: object) -> bool:
    return isinstance(cell, (int, float)) and not isinstance(cell, bool) and math.isfinite(cell)


def column_kind(values: list) -> ColumnKind:
    return ColumnKind.NUMBER if values and all(is_number(v) for v in values) else ColumnKind.TEXT


def coerce_cells(values: list, kind: ColumnKind) -> list:
    if kind is ColumnKind.NUMBER:
        return [float(v) for v in values]
    return ["" if v is None else str(v) for v in values]
