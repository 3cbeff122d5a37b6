"""Anchor directives and their resolution against a parsed SVG.

A directive says *how* a marker finds its place (fixed coordinates, a
selector, a text search, or a mark-extremum rule); resolution turns it
into concrete user-unit coordinates, or an ``Unresolved`` signal when the
lookup misses — downstream the message is then dropped, never mislocated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..errors import MalformedBundle, UnsupportedElement
from .dom import SvgDoc, SvgNode, bounding_box
from .query import DIRECTIONS, MEASURES, find_by_text, parse_selector, query_selector, select_extremum


@dataclass(frozen=True)
class Coords:
    x: float
    y: float


@dataclass(frozen=True)
class Selector:
    sel: str


@dataclass(frozen=True)
class FindByValue:
    value: str
    offset_left: float = 0.0
    offset_top: float = 0.0


@dataclass(frozen=True)
class MarkExtremum:
    sel: str
    measure: str  # cx | cy | rectHeight | rectArea
    direction: str  # min | max


AnchorDirective = Union[Coords, Selector, FindByValue, MarkExtremum]


@dataclass(frozen=True)
class ResolvedAnchor:
    x: float
    y: float
    strategy: str


@dataclass(frozen=True)
class Unresolved:
    reason: str


def directive_is_well_formed(directive: object) -> bool:
    if isinstance(directive, Coords):
        return True
    if isinstance(directive, FindByValue):
        return bool(directive.value)
    try:
        if isinstance(directive, Selector):
            parse_selector(directive.sel)
            return True
        if isinstance(directive, MarkExtremum):
            parse_selector(directive.sel)
            return directive.measure in MEASURES and directive.direction in DIRECTIONS
    except Exception:
        return False
    return False


def _clamp(doc: SvgDoc, x: float, y: float, strategy: str) -> ResolvedAnchor:
    return ResolvedAnchor(
        x=min(max(x, 0.0), doc.width),
        y=min(max(y, 0.0), doc.height),
        strategy=strategy,
    )


def _node_box(node: SvgNode):
    if node.unsupported_transform:
        return None, Unresolved(f"<{node.tag}> carries a non-translate transform")
    try:
        return bounding_box(node), None
    except UnsupportedElement as exc:
        return None, Unresolved(str(exc))


def resolve_anchor(doc: SvgDoc, directive: AnchorDirective) -> ResolvedAnchor | Unresolved:
    if isinstance(directive, Coords):
        return _clamp(doc, directive.x, directive.y, "coords")

    if isinstance(directive, Selector):
        matches = query_selector(doc, directive.sel)
        if not matches:
            return Unresolved(f"selector {directive.sel!r} matched nothing")
        box, failure = _node_box(matches[0])
        if failure is not None:
            return failure
        cx, cy = box.center()
        return _clamp(doc, cx, cy, "selector")

    if isinstance(directive, FindByValue):
        node = find_by_text(doc, directive.value)
        if node is None:
            return Unresolved(f"no element with text {directive.value!r}")
        box, failure = _node_box(node)
        if failure is not None:
            return failure
        return _clamp(
            doc,
            box.x + directive.offset_left,
            box.y + directive.offset_top,
            "findByValue",
        )

    if isinstance(directive, MarkExtremum):
        node = select_extremum(doc, directive.sel, directive.measure, directive.direction)
        if node is None:
            return Unresolved(f"extremum selector {directive.sel!r} matched nothing measurable")
        box, failure = _node_box(node)
        if failure is not None:
            return failure
        cx, cy = box.center()
        return _clamp(doc, cx, cy, "markExtremum")

    raise TypeError(f"not an anchor directive: {directive!r}")


# Wire format: tagged objects with a "kind" discriminator.

def anchor_to_dict(anchor: AnchorDirective | ResolvedAnchor) -> dict:
    if isinstance(anchor, Coords):
        return {"kind": "coords", "x": anchor.x, "y": anchor.y}
    if isinstance(anchor, Selector):
        return {"kind": "selector", "sel": anchor.sel}
    if isinstance(anchor, FindByValue):
        return {
            "kind": "findByValue",
            "value": anchor.value,
            "offset": {"left": anchor.offset_left, "top": anchor.offset_top},
        }
    if isinstance(anchor, MarkExtremum):
        return {
            "kind": "markExtremum",
            "sel": anchor.sel,
            "measure": anchor.measure,
            "direction": anchor.direction,
        }
    if isinstance(anchor, ResolvedAnchor):
        return {"kind": "resolved", "x": anchor.x, "y": anchor.y, "strategy": anchor.strategy}
    raise TypeError(f"not an anchor: {anchor!r}")


def anchor_from_dict(obj: object) -> AnchorDirective | ResolvedAnchor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedBundle(f"anchor must be a tagged object, got {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "coords":
            return Coords(x=float(obj["x"]), y=float(obj["y"]))
        if kind == "selector":
            return Selector(sel=str(obj["sel"]))
        if kind == "findByValue":
            offset = obj.get("offset", {})
            return FindByValue(
                value=str(obj["value"]),
                offset_left=float(offset.get("left", 0.0)),
                offset_top=float(offset.get("top", 0.0)),
            )
        if kind == "markExtremum":
            return MarkExtremum(
                sel=str(obj["sel"]), measure=str(obj["measure"]), direction=str(obj["direction"])
            )
        if kind == "resolved":
            return ResolvedAnchor(x=float(obj["x"]), y=float(obj["y"]), strategy=str(obj["strategy"]))
    except (KeyError, ValueError) as exc:
        raise MalformedBundle(f"bad {kind!r} anchor: {exc}") from exc
    raise MalformedBundle(f"unknown anchor kind {kind!r}")
