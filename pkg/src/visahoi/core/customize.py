"""Declarative customization patches over messages, stages, and nav.

A patch is an ordered list of tagged operations (field ``op``). Operations
addressing unknown ids are collected into a report instead of failing the
whole patch; structural problems in the patch file itself are errors.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from ..errors import MalformedPatch
from ..svg.anchor import anchor_from_dict
from .messages import OnboardingMessage, sort_messages
from .stages import OnboardingStage

ALIGNMENTS = ("vertical", "horizontal")

OPS = {
    "setMessageText",
    "setTooltipTitle",
    "deleteMessage",
    "addMessage",
    "setMessageStage",
    "setMessageOrder",
    "deleteStage",
    "addStage",
    "setStageTitle",
    "setStageColor",
    "setStageIcon",
    "setNav",
    "setMarkerNumbers",
}


@dataclass(frozen=True)
class NavSettings:
    show_stepper: bool = True
    alignment: str = "vertical"


@dataclass(frozen=True)
class CustomizeResult:
    messages: list[OnboardingMessage]
    stages: list[OnboardingStage]
    nav: NavSettings
    marker_numbers: bool
    report: list[str]


def parse_patch(text: str) -> list[dict]:
    try:
        ops = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedPatch(f"patch is not valid JSON: {exc}") from exc
    if not isinstance(ops, list):
        raise MalformedPatch("patch must be a JSON array of operations")
    for i, op in enumerate(ops):
        if not isinstance(op, dict) or not isinstance(op.get("op"), str):
            raise MalformedPatch(f"operation {i} is not a tagged object")
        if op["op"] not in OPS:
            raise MalformedPatch(f"operation {i}: unknown op {op['op']!r}")
        _validate_fields(i, op)
    return ops


def _require(i: int, op: dict, *fields: str) -> None:
    for name in fields:
        if name not in op:
            raise MalformedPatch(f"operation {i} ({op['op']}): missing field {name!r}")


def _validate_fields(i: int, op: dict) -> None:
    kind = op["op"]
    if kind in ("setMessageText",):
        _require(i, op, "messageId", "text")
    elif kind in ("setTooltipTitle",):
        _require(i, op, "messageId", "title")
    elif kind == "deleteMessage":
        _require(i, op, "messageId")
    elif kind == "addMessage":
        _require(i, op, "message")
    elif kind == "setMessageStage":
        _require(i, op, "messageId", "stageId")
    elif kind == "setMessageOrder":
        _require(i, op, "messageId", "order")
    elif kind == "deleteStage":
        _require(i, op, "stageId")
    elif kind == "addStage":
        _require(i, op, "stage")
    elif kind in ("setStageTitle", "setStageColor", "setStageIcon"):
        _require(i, op, "stageId", "value")
    elif kind == "setNav":
        if "alignment" in op and op["alignment"] not in ALIGNMENTS:
            raise MalformedPatch(
                f"operation {i} (setNav): alignment must be one of {ALIGNMENTS}"
            )
    elif kind == "setMarkerNumbers":
        _require(i, op, "value")
        if not isinstance(op["value"], bool):
            raise MalformedPatch(f"operation {i} (setMarkerNumbers): value must be a boolean")


def _message_from_op(obj: dict) -> OnboardingMessage:
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
            marker_number=int(obj["markerNumber"]) if obj.get("markerNumber") is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPatch(f"addMessage: bad message object: {exc}") from exc


def _stage_from_op(obj: dict) -> OnboardingStage:
    try:
        return OnboardingStage(
            id=str(obj["id"]),
            title=str(obj["title"]),
            icon_name=str(obj.get("iconName", "circle")),
            color=str(obj.get("color", "#888888")),
            order=int(obj["order"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPatch(f"addStage: bad stage object: {exc}") from exc


def apply_customization(
    messages: list[OnboardingMessage],
    stages: list[OnboardingStage],
    patch: list[dict],
    nav: NavSettings = NavSettings(),
    marker_numbers: bool = True,
) -> CustomizeResult:
    msgs = list(messages)
    stgs = list(stages)
    report: list[str] = []

    def find_message(mid: str) -> int | None:
        for i, m in enumerate(msgs):
            if m.id == mid:
                return i
        return None

    def find_stage(sid: str) -> int | None:
        for i, s in enumerate(stgs):
            if s.id == sid:
                return i
        return None

    def patch_message(mid: str, op_name: str, **changes) -> None:
        i = find_message(mid)
        if i is None:
            report.append(f"{op_name}: unknown message id {mid!r}")
            return
        msgs[i] = dataclasses.replace(msgs[i], **changes)

    def patch_stage(sid: str, op_name: str, **changes) -> None:
        i = find_stage(sid)
        if i is None:
            report.append(f"{op_name}: unknown stage id {sid!r}")
            return
        stgs[i] = dataclasses.replace(stgs[i], **changes)

    for op in patch:
        kind = op["op"]
        if kind == "setMessageText":
            patch_message(str(op["messageId"]), kind, text=str(op["text"]))
        elif kind == "setTooltipTitle":
            patch_message(str(op["messageId"]), kind, title=str(op["title"]))
        elif kind == "deleteMessage":
            i = find_message(str(op["messageId"]))
            if i is None:
                report.append(f"deleteMessage: unknown message id {op['messageId']!r}")
            else:
                del msgs[i]
        elif kind == "addMessage":
            message = _message_from_op(op["message"])
            if find_message(message.id) is not None:
                report.append(f"addMessage: duplicate message id {message.id!r}")
            elif find_stage(message.stage_id) is None:
                report.append(f"addMessage: unknown stage id {message.stage_id!r}")
            else:
                msgs.append(message)
        elif kind == "setMessageStage":
            sid = str(op["stageId"])
            if find_stage(sid) is None:
                report.append(f"setMessageStage: unknown stage id {sid!r}")
            else:
                patch_message(str(op["messageId"]), kind, stage_id=sid)
        elif kind == "setMessageOrder":
            patch_message(str(op["messageId"]), kind, order=int(op["order"]))
        elif kind == "deleteStage":
            sid = str(op["stageId"])
            i = find_stage(sid)
            if i is None:
                report.append(f"deleteStage: unknown stage id {sid!r}")
            else:
                del stgs[i]
                msgs = [m for m in msgs if m.stage_id != sid]
        elif kind == "addStage":
            stage = _stage_from_op(op["stage"])
            if find_stage(stage.id) is not None:
                report.append(f"addStage: duplicate stage id {stage.id!r}")
            elif any(s.order == stage.order for s in stgs):
                report.append(f"addStage: duplicate stage order {stage.order}")
            else:
                stgs.append(stage)
        elif kind == "setStageTitle":
            patch_stage(str(op["stageId"]), kind, title=str(op["value"]))
        elif kind == "setStageColor":
            patch_stage(str(op["stageId"]), kind, color=str(op["value"]))
        elif kind == "setStageIcon":
            patch_stage(str(op["stageId"]), kind, icon_name=str(op["value"]))
        elif kind == "setNav":
            nav = NavSettings(
                show_stepper=bool(op.get("showStepper", nav.show_stepper)),
                alignment=str(op.get("alignment", nav.alignment)),
            )
        elif kind == "setMarkerNumbers":
            marker_numbers = bool(op["value"])

    stgs.sort(key=lambda s: s.order)
    msgs = sort_messages(msgs, stgs)
    return CustomizeResult(
        messages=msgs, stages=stgs, nav=nav, marker_numbers=marker_numbers, report=report
    )
