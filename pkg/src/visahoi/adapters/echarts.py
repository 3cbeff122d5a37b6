"""ECharts option subset -> ChartModel."""

from __future__ import annotations

from ..errors import MalformedSpec, UnsupportedSeriesType
from ..model import (
    AxisInfo,
    AxisKind,
    ChartModel,
    ChartType,
    ColorScale,
    Column,
    ColumnKind,
    DataTable,
    Grammar,
)
from ._color import parse_color
from ._util import coerce_cells, column_kind, is_number, load_json_object, title_text

SUPPORTED_SERIES = {
    "bar": ChartType.BAR_CHART,
    "scatter": ChartType.SCATTERPLOT,
    "heatmap": ChartType.CHANGE_MATRIX,
    "treemap": ChartType.TREEMAP,
    # Horizon graphs have no native series type; the convention here is a
    # custom-rendered series.
    "custom": ChartType.HORIZON_GRAPH,
}

_AXIS_KINDS = {
    "category": AxisKind.CATEGORICAL,
    "value": AxisKind.QUANTITATIVE,
    "time": AxisKind.TEMPORAL,
}


def _first(obj: object) -> dict | None:
    """ECharts allows single-object or array form for several components."""
    if isinstance(obj, dict):
        return obj
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        return obj[0]
    return None


def _axis_info(axis: dict | None, default_kind: AxisKind) -> AxisInfo | None:
    if axis is None:
        return None
    kind = _AXIS_KINDS.get(str(axis.get("type", "")).lower(), default_kind)
    name = axis.get("name")
    title = name if isinstance(name, str) and name.strip() else None
    return AxisInfo(kind=kind, title=title)


def _color_scale(visual_map: dict | None) -> ColorScale | None:
    if visual_map is None:
        return None
    lo, hi = visual_map.get("min"), visual_map.get("max")
    in_range = visual_map.get("inRange")
    colors = in_range.get("color") if isinstance(in_range, dict) else None
    if not (is_number(lo) and is_number(hi) and isinstance(colors, list) and len(colors) >= 2):
        return None
    return ColorScale(
        domain_min=float(lo),
        domain_max=float(hi),
        min_color=parse_color(colors[0]),
        max_color=parse_color(colors[-1]),
    )


def _flatten_tree(nodes: list, depth: int, out: list) -> float:
    """DFS over treemap nodes; parents without an explicit value get the sum
    of their children, mirroring how the renderer sizes them."""
    total = 0.0
    for node in nodes:
        if not isinstance(node, dict):
            raise MalformedSpec("echarts treemap: nodes must be objects")
        name = node.get("name")
        if not isinstance(name, str):
            raise MalformedSpec("echarts treemap: node missing name")
        children = node.get("children")
        children = children if isinstance(children, list) else []
        placeholder = len(out)
        out.append(None)
        child_sum = _flatten_tree(children, depth + 1, out)
        value = float(node["value"]) if is_number(node.get("value")) else child_sum
        out[placeholder] = (name, value, float(depth), 1.0 if not children else 0.0)
        total += value
    return total


def _tree_table(data: list) -> DataTable:
    rows: list = []
    _flatten_tree(data, 1, rows)
    columns = (
        Column("name", ColumnKind.TEXT),
        Column("value", ColumnKind.NUMBER),
        Column("depth", ColumnKind.NUMBER),
        Column("leaf", ColumnKind.NUMBER),
    )
    return DataTable(columns=columns, rows=tuple(rows))


def _pair_table(data: list, x_categories: list | None) -> DataTable:
    xs: list = []
    ys: list = []
    for i, item in enumerate(data):
        value = item.get("value") if isinstance(item, dict) else item
        if isinstance(value, list) and len(value) >= 2:
            xs.append(value[0])
            ys.append(value[1])
        else:
            xs.append(x_categories[i] if x_categories and i < len(x_categories) else i)
            ys.append(value)
    xk, yk = column_kind(xs), column_kind(ys)
    return DataTable(
        columns=(Column("x", xk), Column("y", yk)),
        rows=tuple(zip(coerce_cells(xs, xk), coerce_cells(ys, yk))),
    )


def _cell_table(data: list) -> DataTable:
    rows = []
    for item in data:
        value = item.get("value") if isinstance(item, dict) else item
        if not (isinstance(value, list) and len(value) >= 3):
            raise MalformedSpec("echarts heatmap: data items must be [x, y, value] triples")
        rows.append((float(value[0]), float(value[1]), float(value[2])))
    columns = (
        Column("x", ColumnKind.NUMBER),
        Column("y", ColumnKind.NUMBER),
        Column("value", ColumnKind.NUMBER),
    )
    return DataTable(columns=columns, rows=tuple(rows))


def parse_echarts(option_text: str) -> ChartModel:
    option = load_json_object(option_text, "echarts option")

    series = option.get("series")
    if not isinstance(series, list) or not series:
        raise MalformedSpec("echarts option: series array required")
    head = series[0]
    if not isinstance(head, dict):
        raise MalformedSpec("echarts option: series entries must be objects")
    series_type = str(head.get("type", ""))
    chart_type = SUPPORTED_SERIES.get(series_type)
    if chart_type is None:
        raise UnsupportedSeriesType(f"echarts series type {series_type!r} is not supported")

    data = head.get("data")
    if not isinstance(data, list):
        raise MalformedSpec("echarts option: inline series data required")

    x_axis_raw = _first(option.get("xAxis"))
    y_axis_raw = _first(option.get("yAxis"))
    x_categories = None
    if x_axis_raw is not None and isinstance(x_axis_raw.get("data"), list):
        x_categories = x_axis_raw["data"]

    if chart_type is ChartType.TREEMAP:
        table = _tree_table(data)
    elif chart_type is ChartType.CHANGE_MATRIX:
        table = _cell_table(data)
    else:
        table = _pair_table(data, x_categories)

    positive = negative = None
    if chart_type is ChartType.HORIZON_GRAPH:
        bands = []
        for entry in series:
            style = entry.get("itemStyle") if isinstance(entry, dict) else None
            if isinstance(style, dict) and isinstance(style.get("color"), str):
                bands.append(parse_color(style["color"]))
        if bands:
            positive = bands[0]
        if len(bands) > 1:
            negative = bands[1]

    return ChartModel(
        grammar=Grammar.ECHARTS,
        chart_type=chart_type,
        data=table,
        title=title_text(option.get("title")),
        x_axis=_axis_info(x_axis_raw, AxisKind.CATEGORICAL),
        y_axis=_axis_info(y_axis_raw, AxisKind.QUANTITATIVE),
        color_scale=_color_scale(_first(option.get("visualMap"))),
        legend_title=None,
        width=None,
        height=None,
        series_count=len(series),
        positive_band_color=positive,
        negative_band_color=negative,
    )
