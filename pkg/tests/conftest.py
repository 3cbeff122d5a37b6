from __future__ import annotations

import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# (fixture stem, grammar name, chart type name) for every spec fixture.
SPEC_FIXTURES = [
    ("scatter.vl", "vega-lite", "scatterplot"),
    ("scatter.echarts", "echarts", "scatterplot"),
    ("scatter.plotly", "plotly", "scatterplot"),
    ("bar.vl", "vega-lite", "bar-chart"),
    ("bar.echarts", "echarts", "bar-chart"),
    ("bar.plotly", "plotly", "bar-chart"),
    ("changematrix.vl", "vega-lite", "change-matrix"),
    ("changematrix.echarts", "echarts", "change-matrix"),
    ("treemap.echarts", "echarts", "treemap"),
    ("treemap.plotly", "plotly", "treemap"),
    ("horizon.vl", "vega-lite", "horizon-graph"),
    ("horizon.echarts", "echarts", "horizon-graph"),
    ("horizon.plotly", "plotly", "horizon-graph"),
]

SVG_BY_CHART = {
    "scatterplot": "scatter.svg",
    "bar-chart": "bar.svg",
    "change-matrix": "changematrix.svg",
    "treemap": "treemap.svg",
    "horizon-graph": "horizon.svg",
}


def spec_path(stem: str) -> Path:
    return FIXTURES / "specs" / f"{stem}.json"


def svg_path(chart_type: str) -> Path:
    return FIXTURES / "svgs" / SVG_BY_CHART[chart_type]


def load_spec(stem: str) -> str:
    return spec_path(stem).read_text(encoding="utf-8")


def load_svg(chart_type: str) -> str:
    return svg_path(chart_type).read_text(encoding="utf-8")


def spec_without_title(stem: str) -> str:
    """Drop the title field wherever the grammar keeps it."""
    obj = json.loads(load_spec(stem))
    obj.pop("title", None)
    if isinstance(obj.get("layout"), dict):
        obj["layout"].pop("title", None)
    return json.dumps(obj)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
