"""The versioned onboarding bundle and its canonical JSON form.

Canonical form: keys sorted, arrays in semantic order (stages by order,
messages by stage/message order), two-space indent, trailing newline.
Serializing a parsed canonical document reproduces it byte for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .core.customize import ALIGNMENTS, NavSettings
from .core.messages import MARKER_ID_PATTERN, MESSAGE_ID_PATTERN, OnboardingMessage, sort_messages
from .core.stages import OnboardingStage
from .core.templates import TOOLTIP_PLACEMENTS
from .errors import DanglingStageRef, MalformedBundle, SchemaVersionMismatch
from .model import ChartType, Grammar
from .svg.anchor import anchor_from_dict, anchor_to_dict

SCHEMA_VERSION = "visahoi-bundle/1"

_UNEXPANDED = re.compile(r"\{[a-zA-Z.][a-zA-Z0-9.]*\}")


@dataclass(frozen=True)
class ChartMeta:
    grammar: Grammar
    chart_type: ChartType
    width: float
    height: float


@dataclass(frozen=True)
class OnboardingBundle:
    context_key: str
    chart: ChartMeta
    stages: tuple[OnboardingStage, ...]
    messages: tuple[OnboardingMessage, ...]
    nav: NavSettings = NavSettings()
    marker_numbers: bool = True
    schema_version: str = SCHEMA_VERSION


def _num(value: float):
    """Integral floats print as ints so canonical output stays stable."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def _message_to_dict(message: OnboardingMessage) -> dict:
    out = {
        "anchor": anchor_to_dict(message.anchor),
        "id": message.id,
        "markerId": message.marker_id,
        "order": message.order,
        "stageId": message.stage_id,
        "text": message.text,
        "title": message.title,
        "tooltipPlacement": message.tooltip_placement,
    }
    if message.marker_number is not None:
        out["markerNumber"] = message.marker_number
    anchor = out["anchor"]
    for key in ("x", "y"):
        if key in anchor:
            anchor[key] = _num(anchor[key])
    if "offset" in anchor:
        anchor["offset"] = {k: _num(v) for k, v in anchor["offset"].items()}
    return out


def _stage_to_dict(stage: OnboardingStage) -> dict:
    return {
        "color": stage.color,
        "iconName": stage.icon_name,
        "id": stage.id,
        "order": stage.order,
        "title": stage.title,
    }


def bundle_to_dict(bundle: OnboardingBundle) -> dict:
    stages = sorted(bundle.stages, key=lambda s: s.order)
    messages = sort_messages(list(bundle.messages), stages)
    return {
        "chart": {
            "chartType": bundle.chart.chart_type.value,
            "grammar": bundle.chart.grammar.value,
            "height": _num(bundle.chart.height),
            "width": _num(bundle.chart.width),
        },
        "contextKey": bundle.context_key,
        "markerNumbers": bundle.marker_numbers,
        "messages": [_message_to_dict(m) for m in messages],
        "nav": {"alignment": bundle.nav.alignment, "showStepper": bundle.nav.show_stepper},
        "schemaVersion": bundle.schema_version,
        "stages": [_stage_to_dict(s) for s in stages],
    }


def serialize_bundle(bundle: OnboardingBundle) -> str:
    return json.dumps(bundle_to_dict(bundle), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _message_from_dict(obj: dict) -> OnboardingMessage:
    try:
        return OnboardingMessage(
            id=str(obj["id"]),
            marker_id=str(obj["markerId"]),
            text=str(obj["text"]),
            title=str(obj.get("title", "")),
            stage_id=str(obj["stageId"]),
            order=int(obj["order"]),
            tooltip_placement=str(obj.get("tooltipPlacement", "top")),
            anchor=anchor_from_dict(obj["anchor"]),
            marker_number=int(obj["markerNumber"]) if "markerNumber" in obj else None,
        )
    except MalformedBundle:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedBundle(f"bad message object: {exc}") from exc


def _stage_from_dict(obj: dict) -> OnboardingStage:
    try:
        return OnboardingStage(
            id=str(obj["id"]),
            title=str(obj["title"]),
            icon_name=str(obj.get("iconName", "circle")),
            color=str(obj.get("color", "#888888")),
            order=int(obj["order"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedBundle(f"bad stage object: {exc}") from exc


def parse_bundle(text: str) -> OnboardingBundle:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedBundle(f"bundle is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedBundle("bundle must be a JSON object")
    version = obj.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"bundle schemaVersion {version!r} is not supported (expected {SCHEMA_VERSION!r})"
        )
    chart = obj.get("chart")
    if not isinstance(chart, dict):
        raise MalformedBundle("bundle misses the chart object")
    try:
        meta = ChartMeta(
            grammar=Grammar(chart["grammar"]),
            chart_type=ChartType(chart["chartType"]),
            width=float(chart["width"]),
            height=float(chart["height"]),
        )
    except (KeyError, ValueError) as exc:
        raise MalformedBundle(f"bad chart object: {exc}") from exc
    stages = tuple(_stage_from_dict(s) for s in obj.get("stages", []))
    messages = tuple(_message_from_dict(m) for m in obj.get("messages", []))
    stage_ids = {s.id for s in stages}
    for message in messages:
        if message.stage_id not in stage_ids:
            raise DanglingStageRef(
                f"message {message.id!r} references unknown stage {message.stage_id!r}"
            )
    nav_obj = obj.get("nav", {})
    nav = NavSettings(
        show_stepper=bool(nav_obj.get("showStepper", True)),
        alignment=str(nav_obj.get("alignment", "vertical")),
    )
    return OnboardingBundle(
        context_key=str(obj.get("contextKey", "")),
        chart=meta,
        stages=stages,
        messages=messages,
        nav=nav,
        marker_numbers=bool(obj.get("markerNumbers", True)),
        schema_version=str(version),
    )


def validate_bundle_text(text: str) -> list[str]:
    """All invariant violations in one pass; empty list means valid."""
    violations: list[str] = []
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        return [f"not valid JSON: {exc}"]
    if not isinstance(obj, dict):
        return ["bundle must be a JSON object"]

    if obj.get("schemaVersion") != SCHEMA_VERSION:
        violations.append(
            f"schemaVersion {obj.get('schemaVersion')!r} != {SCHEMA_VERSION!r}"
        )
    chart = obj.get("chart")
    if not isinstance(chart, dict):
        violations.append("missing chart object")
    else:
        for key in ("width", "height"):
            value = chart.get(key)
            if not isinstance(value, (int, float)) or value <= 0:
                violations.append(f"chart.{key} must be > 0, got {value!r}")

    stages = obj.get("stages", [])
    stage_ids: set[str] = set()
    orders: set = set()
    if not isinstance(stages, list):
        violations.append("stages must be an array")
        stages = []
    for stage in stages:
        if not isinstance(stage, dict):
            violations.append(f"stage entry {stage!r} is not an object")
            continue
        sid = stage.get("id")
        if sid in stage_ids:
            violations.append(f"duplicate stage id {sid!r}")
        stage_ids.add(sid)
        order = stage.get("order")
        if order in orders:
            violations.append(f"duplicate stage order {order!r}")
        orders.add(order)

    messages = obj.get("messages", [])
    if not isinstance(messages, list):
        violations.append("messages must be an array")
        messages = []
    seen_ids: set[str] = set()
    seen_markers: set[str] = set()
    for message in messages:
        if not isinstance(message, dict):
            violations.append(f"message entry {message!r} is not an object")
            continue
        mid = str(message.get("id", ""))
        marker = str(message.get("markerId", ""))
        if mid in seen_ids:
            violations.append(f"duplicate message id {mid!r}")
        seen_ids.add(mid)
        if marker in seen_markers:
            violations.append(f"duplicate marker id {marker!r}")
        seen_markers.add(marker)
        m1 = MESSAGE_ID_PATTERN.match(mid)
        m2 = MARKER_ID_PATTERN.match(marker)
        if not m1:
            violations.append(f"message id {mid!r} does not match visahoi-message-<ctx>-<n>")
        if not m2:
            violations.append(f"marker id {marker!r} does not match visahoi-marker-<ctx>-<n>")
        if m1 and m2 and (m1.group("ctx"), m1.group("n")) != (m2.group("ctx"), m2.group("n")):
            violations.append(f"message/marker id pair {mid!r} / {marker!r} disagree")
        if message.get("stageId") not in stage_ids:
            violations.append(
                f"message {mid!r} references unknown stage {message.get('stageId')!r}"
            )
        text_value = str(message.get("text", ""))
        if _UNEXPANDED.search(text_value):
            violations.append(f"message {mid!r} text contains unexpanded placeholder")
        if message.get("tooltipPlacement") not in TOOLTIP_PLACEMENTS:
            violations.append(
                f"message {mid!r} tooltipPlacement {message.get('tooltipPlacement')!r} invalid"
            )

    nav = obj.get("nav", {})
    if isinstance(nav, dict):
        if nav.get("alignment", "vertical") not in ALIGNMENTS:
            violations.append(f"nav.alignment {nav.get('alignment')!r} invalid")
    else:
        violations.append("nav must be an object")
    return violations
