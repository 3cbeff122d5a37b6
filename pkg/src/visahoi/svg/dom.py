"""Minimal SVG document model: parse, geometry, bounding boxes.

Only translate() transforms are folded into coordinates; any other
transform function taints the node (and its subtree) so anchor resolution
can refuse to produce wrong coordinates.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterator

from ..errors import MalformedSvg, MissingDimensions, UnsupportedElement

_TRANSFORM_FN = re.compile(r"([a-zA-Z]+)\s*\(([^)]*)\)")
_NUMBER = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")

# Character width as a fraction of font size, and line height multiplier,
# for the metric text-box heuristic (no font shaping headlessly).
TEXT_WIDTH_FACTOR = 0.6
TEXT_HEIGHT_FACTOR = 1.2
DEFAULT_FONT_SIZE = 16.0


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def union(self, other: "Rect") -> "Rect":
        x0 = min(self.x, other.x)
        y0 = min(self.y, other.y)
        x1 = max(self.x + self.w, other.x + other.w)
        y1 = max(self.y + self.h, other.y + other.h)
        return Rect(x0, y0, x1 - x0, y1 - y0)

    def contains(self, other: "Rect", eps: float = 1e-9) -> bool:
        return (
            self.x <= other.x + eps
            and self.y <= other.y + eps
            and self.x + self.w >= other.x + other.w - eps
            and self.y + self.h >= other.y + other.h - eps
        )


class SvgNode:
    """One element of the tree. Identity-based equality: queries return the
    actual nodes, and tests compare them by identity."""

    __slots__ = (
        "tag",
        "id",
        "classes",
        "attributes",
        "text_content",
        "children",
        "parent",
        "translate",
        "unsupported_transform",
    )

    def __init__(
        self,
        tag: str,
        attributes: dict[str, str],
        text_content: str,
        parent: "SvgNode | None",
        translate: tuple[float, float],
        unsupported_transform: bool,
    ) -> None:
        self.tag = tag
        self.id = attributes.get("id")
        self.classes = frozenset(attributes.get("class", "").split())
        self.attributes = attributes
        self.text_content = text_content
        self.children: list[SvgNode] = []
        self.parent = parent
        self.translate = translate
        self.unsupported_transform = unsupported_transform

    def __repr__(self) -> str:  # debugging aid only
        ident = f"#{self.id}" if self.id else ""
        cls = "." + ".".join(sorted(self.classes)) if self.classes else ""
        return f"<SvgNode {self.tag}{ident}{cls}>"

    def walk(self) -> Iterator["SvgNode"]:
        """Pre-order traversal (document order), self included."""
        yield self
        for child in self.children:
            yield from child.walk()

    def float_attr(self, name: str) -> float | None:
        raw = self.attributes.get(name)
        if raw is None:
            return None
        try:
            return float(raw.strip().removesuffix("px"))
        except ValueError:
            return None

    def inherited(self, name: str) -> str | None:
        """Attribute value on self or the nearest ancestor, also honoring
        inline style declarations."""
        node: SvgNode | None = self
        while node is not None:
            if name in node.attributes:
                return node.attributes[name]
            style = node.attributes.get("style")
            if style:
                for part in style.split(";"):
                    key, _, value = part.partition(":")
                    if key.strip() == name and value.strip():
                        return value.strip()
            node = node.parent
        return None


@dataclass(frozen=True)
class SvgDoc:
    root: SvgNode
    width: float
    height: float

    def walk(self) -> Iterator[SvgNode]:
        return self.root.walk()


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_transform(text: str | None) -> tuple[float, float, bool]:
    """Fold translate() calls; flag any other transform function."""
    if not text:
        return 0.0, 0.0, False
    dx = dy = 0.0
    unsupported = False
    for fn, args in _TRANSFORM_FN.findall(text):
        numbers = [float(n) for n in _NUMBER.findall(args)]
        if fn == "translate" and numbers:
            dx += numbers[0]
            dy += numbers[1] if len(numbers) > 1 else 0.0
        else:
            unsupported = True
    return dx, dy, unsupported


def _dimension(raw: str | None) -> float | None:
    if raw is None:
        return None
    raw = raw.strip()
    if raw.endswith("%"):
        return None
    try:
        value = float(raw.removesuffix("px"))
    except ValueError:
        return None
    return value if value > 0 else None


def _build(element: ET.Element, parent: SvgNode | None) -> SvgNode:
    attributes = {_local_name(k): v for k, v in element.attrib.items()}
    dx, dy, unsupported = _parse_transform(attributes.get("transform"))
    base = parent.translate if parent is not None else (0.0, 0.0)
    tainted = unsupported or (parent.unsupported_transform if parent is not None else False)
    text = "".join(element.itertext())
    node = SvgNode(
        tag=_local_name(element.tag),
        attributes=attributes,
        text_content=text,
        parent=parent,
        translate=(base[0] + dx, base[1] + dy),
        unsupported_transform=tainted,
    )
    for child in element:
        node.children.append(_build(child, node))
    return node


def parse_svg(text: str) -> SvgDoc:
    try:
        element = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedSvg(f"not well-formed XML: {exc}") from exc
    if _local_name(element.tag) != "svg":
        raise MalformedSvg(f"root element is <{_local_name(element.tag)}>, expected <svg>")
    root = _build(element, None)

    width = _dimension(root.attributes.get("width"))
    height = _dimension(root.attributes.get("height"))
    if width is None or height is None:
        view_box = root.attributes.get("viewBox")
        parts = _NUMBER.findall(view_box) if view_box else []
        if len(parts) == 4:
            vb_w, vb_h = float(parts[2]), float(parts[3])
            width = width if width is not None else (vb_w if vb_w > 0 else None)
            height = height if height is not None else (vb_h if vb_h > 0 else None)
    if width is None or height is None:
        raise MissingDimensions("svg has no usable width/height and no viewBox")
    return SvgDoc(root=root, width=width, height=height)


def bounding_box(node: SvgNode) -> Rect:
    """Geometry for the supported element kinds, in user units with the
    cumulative translate applied."""
    dx, dy = node.translate
    if node.tag == "rect":
        return Rect(
            (node.float_attr("x") or 0.0) + dx,
            (node.float_attr("y") or 0.0) + dy,
            node.float_attr("width") or 0.0,
            node.float_attr("height") or 0.0,
        )
    if node.tag == "circle":
        r = node.float_attr("r") or 0.0
        cx = (node.float_attr("cx") or 0.0) + dx
        cy = (node.float_attr("cy") or 0.0) + dy
        return Rect(cx - r, cy - r, 2 * r, 2 * r)
    if node.tag == "text":
        return _text_box(node, dx, dy)
    if node.tag == "g":
        boxes = []
        for child in node.children:
            try:
                boxes.append(bounding_box(child))
            except UnsupportedElement:
                continue
        if not boxes:
            raise UnsupportedElement("group has no measurable children")
        box = boxes[0]
        for other in boxes[1:]:
            box = box.union(other)
        return box
    if node.tag == "path":
        explicit = node.attributes.get("data-bbox")
        if explicit:
            parts = _NUMBER.findall(explicit)
            if len(parts) == 4:
                x, y, w, h = (float(p) for p in parts)
                return Rect(x + dx, y + dy, w, h)
        raise UnsupportedElement("path without data-bbox attribute")
    raise UnsupportedElement(f"no bounding box rule for <{node.tag}>")


def _text_box(node: SvgNode, dx: float, dy: float) -> Rect:
    raw_size = node.inherited("font-size")
    size = DEFAULT_FONT_SIZE
    if raw_size:
        m = _NUMBER.search(raw_size)
        if m:
            size = float(m.group(0))
    content = node.text_content.strip()
    width = TEXT_WIDTH_FACTOR * size * len(content)
    height = TEXT_HEIGHT_FACTOR * size
    x = (node.float_attr("x") or 0.0) + dx
    y = (node.float_attr("y") or 0.0) + dy
    anchor = (node.inherited("text-anchor") or "start").strip()
    if anchor == "middle":
        x -= width / 2.0
    elif anchor == "end":
        x -= width
    # y is the baseline; the box extends one em above it plus descent below.
    return Rect(x, y - size, width, height)
