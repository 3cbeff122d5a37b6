"""Headless SVG parsing, querying, and anchor resolution."""

from __future__ import annotations

from .anchor import (
    AnchorDirective,
    Coords,
    FindByValue,
    MarkExtremum,
    ResolvedAnchor,
    Selector,
    Unresolved,
    anchor_from_dict,
    anchor_to_dict,
    directive_is_well_formed,
    resolve_anchor,
)
from .dom import Rect, SvgDoc, SvgNode, bounding_box, parse_svg
from .query import find_by_text, query_selector, select_extremum

__all__ = [
    "AnchorDirective",
    "Coords",
    "FindByValue",
    "MarkExtremum",
    "Rect",
    "ResolvedAnchor",
    "Selector",
    "SvgDoc",
    "SvgNode",
    "Unresolved",
    "anchor_from_dict",
    "anchor_to_dict",
    "bounding_box",
    "directive_is_well_formed",
    "find_by_text",
    "parse_svg",
    "query_selector",
    "resolve_anchor",
    "select_extremum",
]
