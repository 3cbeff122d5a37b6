"""Adapters turning declarative grammar specs into the neutral ChartModel."""

from __future__ import annotations

from ..model import ChartModel, Grammar
from .echarts import parse_echarts
from .plotly import parse_plotly
from .vega_lite import parse_vega_lite

__all__ = ["parse_vega_lite", "parse_echarts", "parse_plotly", "parse_spec"]

_PARSERS = {
    Grammar.VEGA_LITE: parse_vega_lite,
    Grammar.ECHARTS: parse_echarts,
    Grammar.PLOTLY: parse_plotly,
}


def parse_spec(grammar: Grammar, text: str) -> ChartModel:
    return _PARSERS[grammar](text)
