"""Selector subset, text lookup, and extremum selection over an SvgDoc.

The selector grammar is deliberately small: tag, .class, #id, compounds of
those, and the descendant combinator. Anything richer raises
InvalidSelector instead of being half-supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import InvalidSelector
from .dom import SvgDoc, SvgNode

_COMPOUND = re.compile(
    r"^(?P<tag>[a-zA-Z][a-zA-Z0-9_-]*)?(?P<rest>(?:[.#][a-zA-Z_][a-zA-Z0-9_-]*)*)$"
)
_SIMPLE = re.compile(r"[.#][a-zA-Z_][a-zA-Z0-9_-]*")

MEASURES = ("cx", "cy", "rectHeight", "rectArea")
DIRECTIONS = ("min", "max")


@dataclass(frozen=True)
class Compound:
    tag: str | None
    classes: frozenset[str]
    id: str | None

    def matches(self, node: SvgNode) -> bool:
        if self.tag is not None and node.tag != self.tag:
            return False
        if self.id is not None and node.id != self.id:
            return False
        return self.classes <= node.classes


def parse_selector(sel: str) -> list[Compound]:
    if not isinstance(sel, str) or not sel.strip():
        raise InvalidSelector("empty selector")
    parts = []
    for token in sel.split():
        m = _COMPOUND.match(token)
        if not m or (m.group("tag") is None and not m.group("rest")):
            raise InvalidSelector(
                f"selector token {token!r} outside the supported subset (tag, .class, #id, descendant)"
            )
        classes = set()
        node_id = None
        consumed = 0
        for simple in _SIMPLE.finditer(m.group("rest")):
            consumed += len(simple.group(0))
            if simple.group(0)[0] == ".":
                classes.add(simple.group(0)[1:])
            else:
                node_id = simple.group(0)[1:]
        if consumed != len(m.group("rest")):
            raise InvalidSelector(f"selector token {token!r} outside the supported subset")
        parts.append(Compound(tag=m.group("tag"), classes=frozenset(classes), id=node_id))
    return parts


def _ancestors_match(node: SvgNode, parts: list[Compound]) -> bool:
    """Greedy upward walk is sufficient for descendant-only combinators."""
    remaining = len(parts) - 1
    current = node.parent
    while remaining > 0 and current is not None:
        if parts[remaining - 1].matches(current):
            remaining -= 1
        current = current.parent
    return remaining == 0


def query_selector(doc: SvgDoc, sel: str) -> list[SvgNode]:
    parts = parse_selector(sel)
    out = []
    for node in doc.walk():
        if parts[-1].matches(node) and _ancestors_match(node, parts):
            out.append(node)
    return out


def find_by_text(doc: SvgDoc, value: str) -> SvgNode | None:
    """First node in document order whose trimmed text equals ``value``,
    preferring the deepest such node (a wrapper whose only content is the
    match defers to the matching child)."""
    if not value:
        return None
    matches = [node for node in doc.walk() if node.text_content.strip() == value]
    matched = set(id(n) for n in matches)
    for node in matches:
        if not any(id(d) in matched for d in node.walk() if d is not node):
            return node
    return None


def _measure(node: SvgNode, measure: str) -> float | None:
    if measure == "cx":
        cx = node.float_attr("cx")
        return None if cx is None else cx + node.translate[0]
    if measure == "cy":
        cy = node.float_attr("cy")
        return None if cy is None else cy + node.translate[1]
    if measure == "rectHeight":
        return node.float_attr("height")
    if measure == "rectArea":
        w = node.float_attr("width")
        h = node.float_attr("height")
        return None if w is None or h is None else w * h
    raise InvalidSelector(f"unknown measure {measure!r}")


def select_extremum(doc: SvgDoc, sel: str, measure: str, direction: str) -> SvgNode | None:
    if measure not in MEASURES:
        raise InvalidSelector(f"unknown measure {measure!r}")
    if direction not in DIRECTIONS:
        raise InvalidSelector(f"unknown direction {direction!r}")
    best: SvgNode | None = None
    best_value = 0.0
    for node in query_selector(doc, sel):
        value = _measure(node, measure)
        if value is None:
            continue
        if best is None:
            best, best_value = node, value
        elif direction == "max" and value > best_value:
            best, best_value = node, value
        elif direction == "min" and value < best_value:
            best, best_value = node, value
    return best
