"""Splice the marker overlay into a chart SVG.

The overlay is one ``<g id="visahoi-overlay" pointer-events="none">``
appended as the last child of the root, so the original document bytes
stay untouched and removing the group restores them exactly. Markers are
circles in stage color; numbering falls back to the message's position in
the bundle's sorted order so deleted messages leave gaps instead of
renumbering their neighbors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .bundle import OnboardingBundle
from .core.messages import sort_messages
from .errors import MalformedSvg
from .svg.anchor import ResolvedAnchor
from .svg.dom import parse_svg

OVERLAY_ID = "visahoi-overlay"
MARKER_RADIUS = 12
MARKER_OPACITY = 0.85
NUMBER_FONT_SIZE = 12
NUMBER_COLOR = "#ffffff"

_OVERLAY_RE = re.compile(r'<g id="visahoi-overlay".*?</g>', re.S)


@dataclass(frozen=True)
class WarningRecord:
    code: str
    message: str


def _fmt(value: float) -> str:
    text = f"{value:.2f}"
    return text.rstrip("0").rstrip(".") if "." in text else text


def strip_overlay(svg_text: str) -> str:
    return _OVERLAY_RE.sub("", svg_text, count=1)


def _marker(message, anchor: ResolvedAnchor, color: str, number: int | None) -> str:
    parts = [
        f'<circle id={quoteattr(message.marker_id)} cx="{_fmt(anchor.x)}" cy="{_fmt(anchor.y)}" '
        f'r="{MARKER_RADIUS}" fill={quoteattr(color)} fill-opacity="{MARKER_OPACITY}"/>'
    ]
    if number is not None:
        parts.append(
            f'<text x="{_fmt(anchor.x)}" y="{_fmt(anchor.y + NUMBER_FONT_SIZE / 3)}" '
            f'text-anchor="middle" font-size="{NUMBER_FONT_SIZE}" font-family="sans-serif" '
            f'fill="{NUMBER_COLOR}">{escape(str(number))}</text>'
        )
    return "".join(parts)


def annotate_svg(
    svg_text: str,
    bundle: OnboardingBundle,
    resolved_anchors: dict[str, ResolvedAnchor],
) -> tuple[str, list[WarningRecord]]:
    parse_svg(svg_text)  # reject malformed input before touching bytes
    base = strip_overlay(svg_text)
    close = base.rfind("</svg>")
    if close < 0:
        raise MalformedSvg("svg root must use an explicit </svg> close tag")

    warnings: list[WarningRecord] = []
    stage_color = {s.id: s.color for s in bundle.stages}
    ordered = sort_messages(list(bundle.messages), list(bundle.stages))
    markers: list[str] = []
    for position, message in enumerate(ordered, start=1):
        anchor = resolved_anchors.get(message.id)
        if anchor is None:
            warnings.append(
                WarningRecord(
                    code="unresolved-anchor",
                    message=f"message {message.id} has no resolved anchor; marker omitted",
                )
            )
            continue
        number = None
        if bundle.marker_numbers:
            number = message.marker_number if message.marker_number is not None else position
        markers.append(_marker(message, anchor, stage_color.get(message.stage_id, "#888888"), number))
    if not markers:
        warnings.append(
            WarningRecord(code="empty-overlay", message="no resolvable messages; overlay is empty")
        )
    overlay = f'<g id="{OVERLAY_ID}" pointer-events="none">' + "".join(markers) + "</g>"
    return base[:close] + overlay + base[close:], warnings
