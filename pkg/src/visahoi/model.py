"""Grammar-neutral chart description shared by all adapters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import MalformedSpec


class Grammar(Enum):
    VEGA_LITE = "vega-lite"
    ECHARTS = "echarts"
    PLOTLY = "plotly"


class ChartType(Enum):
    SCATTERPLOT = "scatterplot"
    BAR_CHART = "bar-chart"
    CHANGE_MATRIX = "change-matrix"
    TREEMAP = "treemap"
    HORIZON_GRAPH = "horizon-graph"
    GENERIC = "generic"


# CLI-facing aliases; canonical names are the enum values.
CHART_TYPE_ALIASES = {
    "scatterplot": ChartType.SCATTERPLOT,
    "scatter": ChartType.SCATTERPLOT,
    "bar-chart": ChartType.BAR_CHART,
    "barchart": ChartType.BAR_CHART,
    "bar": ChartType.BAR_CHART,
    "change-matrix": ChartType.CHANGE_MATRIX,
    "changematrix": ChartType.CHANGE_MATRIX,
    "heatmap": ChartType.CHANGE_MATRIX,
    "treemap": ChartType.TREEMAP,
    "horizon-graph": ChartType.HORIZON_GRAPH,
    "horizongraph": ChartType.HORIZON_GRAPH,
    "horizon": ChartType.HORIZON_GRAPH,
    "generic": ChartType.GENERIC,
}


def chart_type_from_name(name: str) -> ChartType:
    try:
        return CHART_TYPE_ALIASES[name.strip().lower()]
    except KeyError:
        known = ", ".join(sorted(t.value for t in ChartType))
        raise ValueError(f"unknown chart type {name!r}; expected one of: {known}") from None


class AxisKind(Enum):
    QUANTITATIVE = "quantitative"
    CATEGORICAL = "categorical"
    TEMPORAL = "temporal"


class ColumnKind(Enum):
    NUMBER = "number"
    TEXT = "text"


class Rgb(NamedTuple):
    r: int
    g: int
    b: int

    def to_hex(self) -> str:
        return f"#{self.r:02x}{self.g:02x}{self.b:02x}"


@dataclass(frozen=True)
class AxisInfo:
    kind: AxisKind
    title: str | None = None
    field: str | None = None


@dataclass(frozen=True)
class ColorScale:
    domain_min: float
    domain_max: float
    min_color: Rgb
    max_color: Rgb

    def __post_init__(self) -> None:
        if self.domain_min > self.domain_max:
            raise MalformedSpec(
                f"color scale domain min {self.domain_min} exceeds max {self.domain_max}"
            )


@dataclass(frozen=True)
class Column:
    name: str
    kind: ColumnKind


@dataclass(frozen=True)
class DataTable:
    columns: tuple[Column, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise MalformedSpec(f"row {i} has {len(row)} cells, expected {width}")
        for ci, col in enumerate(self.columns):
            if col.kind is not ColumnKind.NUMBER:
                continue
            for ri, row in enumerate(self.rows):
                cell = row[ci]
                if not isinstance(cell, (int, float)) or isinstance(cell, bool) or not math.isfinite(cell):
                    raise MalformedSpec(
                        f"column {col.name!r} row {ri} holds non-finite or non-numeric cell {cell!r}"
                    )

    def column_index(self, name: str) -> int | None:
        for i, col in enumerate(self.columns):
            if col.name == name:
                return i
        return None

    def column_values(self, name: str) -> list:
        idx = self.column_index(name)
        if idx is None:
            raise KeyError(name)
        return [row[idx] for row in self.rows]

    @property
    def row_count(self) -> int:
        return len(self.rows)


EMPTY_TABLE = DataTable(columns=(), rows=())


@dataclass(frozen=True)
class ChartModel:
    grammar: Grammar
    chart_type: ChartType
    data: DataTable = EMPTY_TABLE
    title: str | None = None
    x_axis: AxisInfo | None = None
    y_axis: AxisInfo | None = None
    color_scale: ColorScale | None = None
    legend_title: str | None = None
    width: float | None = None
    height: float | None = None
    series_count: int = 1
    # Horizon band fill colors when the grammar states them explicitly;
    # first layer/series is the positive band, second the negative one.
    positive_band_color: Rgb | None = None
    negative_band_color: Rgb | None = None


def detect_chart_type(model: ChartModel, explicit: ChartType | None = None) -> ChartType:
    """Resolve the effective chart type: caller override wins, then the
    adapter's inference, with GENERIC as the always-available fallback."""
    if explicit is not None:
        return explicit
    return model.chart_type if model.chart_type is not None else ChartType.GENERIC
