"""Extract named chart facts (value + anchor directive) from a ChartModel.

Each emitted feature pairs a display string with a directive saying where
its marker belongs. Missing sources simply omit the feature; message
generation later filters on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import EmptySeries
from .model import AxisKind, ChartModel, ChartType, ColorScale, ColumnKind, Grammar, Rgb
from .svg.anchor import AnchorDirective, Coords, FindByValue, MarkExtremum, Selector

CANONICAL_FEATURE_KEYS = frozenset(
    {
        "chartTitle",
        "xAxisTitle",
        "yAxisTitle",
        "minValue",
        "maxValue",
        "minColor",
        "maxColor",
        "legendTitle",
        "dataPointCount",
        "seriesCount",
        "largestNodeLabel",
        "largestNodeValue",
        "hierarchyDepth",
        "positiveBandColor",
        "negativeBandColor",
        "interactionHint",
    }
)

# Chart area used for coordinate-based anchors when the spec does not state
# its own pixel size.
DEFAULT_CHART_WIDTH = 600.0
DEFAULT_CHART_HEIGHT = 400.0

# Title markers sit up-left of the text box; mirrors the tooltip layout the
# viewer uses for headings.
TITLE_OFFSET = (-20.0, 10.0)

_INTERACTION_HINTS = {
    ChartType.SCATTERPLOT: "hover a point",
    ChartType.BAR_CHART: "hover a bar",
    ChartType.CHANGE_MATRIX: "hover a cell",
    ChartType.TREEMAP: "click a rectangle",
    ChartType.HORIZON_GRAPH: "hover the chart",
    ChartType.GENERIC: "interact with the chart",
}


def is_valid_feature_key(key: str) -> bool:
    return key in CANONICAL_FEATURE_KEYS or key.startswith("custom.")


@dataclass(frozen=True)
class Feature:
    key: str
    value: str
    anchor: AnchorDirective

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError(f"feature {self.key!r} has empty value")


@dataclass(frozen=True)
class ExtractionResult:
    features: Mapping[str, Feature]
    chart_type: ChartType
    chart_width: float
    chart_height: float

    def subset(self, keys: set[str]) -> "ExtractionResult":
        """Restriction to a key subset; used by filtering property tests."""
        kept = {k: v for k, v in self.features.items() if k in keys}
        return ExtractionResult(
            features=MappingProxyType(kept),
            chart_type=self.chart_type,
            chart_width=self.chart_width,
            chart_height=self.chart_height,
        )


@dataclass(frozen=True)
class Extremum:
    min: float
    max: float
    min_index: int
    max_index: int


def compute_extrema(values: Sequence[float]) -> Extremum:
    """Min and max with first-occurrence indices; ties keep the earliest."""
    if len(values) == 0:
        raise EmptySeries("cannot take extrema of an empty sequence")
    lo_i = hi_i = 0
    for i, v in enumerate(values):
        if v < values[lo_i]:
            lo_i = i
        if v > values[hi_i]:
            hi_i = i
    return Extremum(min=values[lo_i], max=values[hi_i], min_index=lo_i, max_index=hi_i)


def format_value(x: float) -> str:
    """Two fractional digits, ties rounded away from zero, no separators."""
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot format non-finite value {x!r}")
        quantized = Decimal(repr(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    else:
        quantized = Decimal(x).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    if quantized == 0:
        quantized = abs(quantized)  # never "-0.00"
    return str(quantized)


def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5))


def interpolate_color(scale: ColorScale, value: float) -> Rgb:
    """Per-channel linear interpolation in sRGB; the position is clamped so
    out-of-domain values snap to the nearest endpoint. A degenerate domain
    maps everything to the minimum color."""
    span = scale.domain_max - scale.domain_min
    t = 0.0 if span <= 0 else (value - scale.domain_min) / span
    t = min(1.0, max(0.0, t))
    return Rgb(
        *(
            _round_half_away(c0 + t * (c1 - c0))
            for c0, c1 in zip(scale.min_color, scale.max_color)
        )
    )


def _axis_selectors(grammar: Grammar) -> tuple[str, str]:
    # Plotly keeps axis titles inside its infolayer group; the generic
    # convention is bare .xtitle/.ytitle classes.
    if grammar is Grammar.PLOTLY:
        return ".infolayer .xtitle", ".infolayer .ytitle"
    return ".xtitle", ".ytitle"


def _quantitative_column(model: ChartModel, ct: ChartType) -> str | None:
    """Column carrying the chart's quantitative channel."""
    if ct is ChartType.CHANGE_MATRIX:
        return "value" if model.data.column_index("value") is not None else None
    for generic_name, axis in (("y", model.y_axis), ("x", model.x_axis)):
        candidates = [generic_name]
        if axis is not None and axis.field:
            candidates.append(axis.field)
        for cand in candidates:
            idx = model.data.column_index(cand)
            if idx is None or model.data.columns[idx].kind is not ColumnKind.NUMBER:
                continue
            if axis is None or axis.kind is AxisKind.QUANTITATIVE:
                return model.data.columns[idx].name
    # No axis metadata: fall back to the last numeric column.
    for col in reversed(model.data.columns):
        if col.kind is ColumnKind.NUMBER:
            return col.name
    return None


def _category_index(values: Sequence, target) -> tuple[int, int]:
    """Position of ``target`` among the distinct values in first-seen order."""
    seen: list = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen.index(target), len(seen)


def _extremum_anchor(
    ct: ChartType,
    model: ChartModel,
    extrema: Extremum,
    want_min: bool,
    width: float,
    height: float,
) -> AnchorDirective:
    if ct is ChartType.SCATTERPLOT:
        # SVG y grows downward: the data minimum is the visually lowest point.
        return MarkExtremum(sel="circle", measure="cy", direction="max" if want_min else "min")
    if ct is ChartType.BAR_CHART:
        return MarkExtremum(sel="rect.mark", measure="rectHeight", direction="min" if want_min else "max")
    if ct is ChartType.TREEMAP:
        return MarkExtremum(sel="rect.mark", measure="rectArea", direction="min" if want_min else "max")
    if ct is ChartType.CHANGE_MATRIX and model.data.column_index("x") is not None:
        xs = model.data.column_values("x")
        ys = model.data.column_values("y")
        row = extrema.min_index if want_min else extrema.max_index
        xi, nx = _category_index(xs, xs[row])
        yi, ny = _category_index(ys, ys[row])
        return Coords(x=(xi + 0.5) / nx * width, y=(yi + 0.5) / ny * height)
    # Horizon graphs (and generic charts) have no per-datum mark to select;
    # place the anchor at the datum's horizontal fraction.
    n = max(model.data.row_count, 1)
    idx = extrema.min_index if want_min else extrema.max_index
    return Coords(x=(idx + 0.5) / n * width, y=height / 2.0)


def extract_features(model: ChartModel, chart_type: ChartType | None = None) -> ExtractionResult:
    """Build the feature map for a parsed chart. Absent sources mean absent
    keys; this function never fails on missing information."""
    ct = chart_type if chart_type is not None else model.chart_type
    width = model.width if model.width else DEFAULT_CHART_WIDTH
    height = model.height if model.height else DEFAULT_CHART_HEIGHT
    x_sel, y_sel = _axis_selectors(model.grammar)

    features: dict[str, Feature] = {}

    def put(key: str, value: str | None, anchor: AnchorDirective) -> None:
        if value:
            features[key] = Feature(key=key, value=value, anchor=anchor)

    put(
        "chartTitle",
        model.title,
        FindByValue(value=model.title or "", offset_left=TITLE_OFFSET[0], offset_top=TITLE_OFFSET[1]),
    )
    if model.x_axis is not None:
        put("xAxisTitle", model.x_axis.title, Selector(sel=x_sel))
    if model.y_axis is not None:
        put("yAxisTitle", model.y_axis.title, Selector(sel=y_sel))
    if model.legend_title:
        put("legendTitle", model.legend_title, FindByValue(value=model.legend_title))

    if model.data.row_count > 0:
        put("dataPointCount", str(model.data.row_count), Coords(x=width * 0.5, y=height * 0.5))
    put("seriesCount", str(model.series_count), Coords(x=width * 0.5, y=height * 0.55))
    put("interactionHint", _INTERACTION_HINTS[ct], Coords(x=width * 0.5, y=height * 0.5))

    value_column = _quantitative_column(model, ct)
    if value_column is not None and model.data.row_count > 0:
        extrema = compute_extrema(model.data.column_values(value_column))
        put(
            "minValue",
            format_value(extrema.min),
            _extremum_anchor(ct, model, extrema, True, width, height),
        )
        put(
            "maxValue",
            format_value(extrema.max),
            _extremum_anchor(ct, model, extrema, False, width, height),
        )

    if model.color_scale is not None:
        scale = model.color_scale
        put(
            "minColor",
            interpolate_color(scale, scale.domain_min).to_hex(),
            Coords(x=width * 0.9, y=height * 0.15),
        )
        put(
            "maxColor",
            interpolate_color(scale, scale.domain_max).to_hex(),
            Coords(x=width * 0.9, y=height * 0.25),
        )

    if ct is ChartType.TREEMAP and model.data.column_index("value") is not None:
        leaf_idx = model.data.column_index("leaf")
        name_idx = model.data.column_index("name")
        value_idx = model.data.column_index("value")
        depth_idx = model.data.column_index("depth")
        rows = model.data.rows
        leaves = [r for r in rows if leaf_idx is None or r[leaf_idx] == 1.0]
        if leaves and name_idx is not None:
            largest = max(leaves, key=lambda r: r[value_idx])
            biggest_rect = MarkExtremum(sel="rect.mark", measure="rectArea", direction="max")
            put("largestNodeLabel", str(largest[name_idx]), biggest_rect)
            put("largestNodeValue", format_value(largest[value_idx]), biggest_rect)
        if depth_idx is not None and rows:
            depth = int(max(r[depth_idx] for r in rows))
            put("hierarchyDepth", str(depth), Coords(x=width * 0.5, y=height * 0.5))

    if model.positive_band_color is not None:
        put(
            "positiveBandColor",
            model.positive_band_color.to_hex(),
            Coords(x=width * 0.5, y=height * 0.3),
        )
    if model.negative_band_color is not None:
        put(
            "negativeBandColor",
            model.negative_band_color.to_hex(),
            Coords(x=width * 0.5, y=height * 0.7),
        )

    return ExtractionResult(
        features=MappingProxyType(features),
        chart_type=ct,
        chart_width=width,
        chart_height=height,
    )
