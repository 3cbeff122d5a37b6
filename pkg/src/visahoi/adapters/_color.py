"""Bounded color literal parser: hex, rgb(), and the 16 basic CSS names."""

from __future__ import annotations

import re

from ..errors import MalformedSpec
from ..model import Rgb

CSS_BASIC_COLORS = {
    "aqua": Rgb(0, 255, 255),
    "black": Rgb(0, 0, 0),
    "blue": Rgb(0, 0, 255),
    "fuchsia": Rgb(255, 0, 255),
    "gray": Rgb(128, 128, 128),
    "green": Rgb(0, 128, 0),
    "lime": Rgb(0, 255, 0),
    "maroon": Rgb(128, 0, 0),
    "navy": Rgb(0, 0, 128),
    "olive": Rgb(128, 128, 0),
    "purple": Rgb(128, 0, 128),
    "red": Rgb(255, 0, 0),
    "silver": Rgb(192, 192, 192),
    "teal": Rgb(0, 128, 128),
    "white": Rgb(255, 255, 255),
    "yellow": Rgb(255, 255, 0),
}

_HEX3 = re.compile(r"#([0-9a-f])([0-9a-f])([0-9a-f])$")
_HEX6 = re.compile(r"#([0-9a-f]{2})([0-9a-f]{2})([0-9a-f]{2})$")
_RGB = re.compile(r"rgb\(\s*(\d{1,3})\s*,\s*(\d{1,3})\s*,\s*(\d{1,3})\s*\)$")


def parse_color(text: object) -> Rgb:
    """Parse a color literal; anything outside the supported forms is a
    MalformedSpec error rather than a silent guess."""
    if not isinstance(text, str):
        raise MalformedSpec(f"expected color string, got {text!r}")
    s = text.strip().lower()
    if s in CSS_BASIC_COLORS:
        return CSS_BASIC_COLORS[s]
    m = _HEX3.match(s)
    if m:
        return Rgb(*(int(c * 2, 16) for c in m.groups()))
    m = _HEX6.match(s)
    if m:
        return Rgb(*(int(c, 16) for c in m.groups()))
    m = _RGB.match(s)
    if m:
        channels = tuple(int(c) for c in m.groups())
        if any(c > 255 for c in channels):
            raise MalformedSpec(f"rgb() channel out of range in {text!r}")
        return Rgb(*channels)
    raise MalformedSpec(f"unsupported color literal {text!r}")
