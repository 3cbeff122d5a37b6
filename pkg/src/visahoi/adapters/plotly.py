"""Plotly figure (traces + layout) subset -> ChartModel."""

from __future__ import annotations

from ..errors import MalformedSpec, UnsupportedTraceType
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

SUPPORTED_TRACES = {"bar", "scatter", "heatmap", "treemap"}


def _axis_info(layout: dict, key: str, values: list | None) -> AxisInfo | None:
    axis = layout.get(key)
    title = None
    if isinstance(axis, dict):
        title = title_text(axis.get("title"))
    if title is None and values is None:
        return None
    if values and column_kind(values) is ColumnKind.NUMBER:
        kind = AxisKind.QUANTITATIVE
    elif values:
        kind = AxisKind.CATEGORICAL
    else:
        kind = AxisKind.QUANTITATIVE
    return AxisInfo(kind=kind, title=title)


def _infer_type(trace: dict) -> ChartType:
    ttype = str(trace.get("type", "scatter"))
    if ttype not in SUPPORTED_TRACES:
        raise UnsupportedTraceType(f"plotly trace type {ttype!r} is not supported")
    if ttype == "bar":
        return ChartType.BAR_CHART
    if ttype == "heatmap":
        return ChartType.CHANGE_MATRIX
    if ttype == "treemap":
        return ChartType.TREEMAP
    # Scatter traces double as line charts; only marker mode counts as a
    # scatterplot here.
    mode = str(trace.get("mode", "markers"))
    if "markers" in mode and "lines" not in mode:
        return ChartType.SCATTERPLOT
    return ChartType.GENERIC


def _xy_table(trace: dict) -> DataTable:
    xs = trace.get("x")
    ys = trace.get("y")
    xs = xs if isinstance(xs, list) else []
    ys = ys if isinstance(ys, list) else []
    n = max(len(xs), len(ys))
    xs = xs + [None] * (n - len(xs))
    ys = ys + [None] * (n - len(ys))
    if n == 0:
        return DataTable(columns=(), rows=())
    xk, yk = column_kind(xs), column_kind(ys)
    return DataTable(
        columns=(Column("x", xk), Column("y", yk)),
        rows=tuple(zip(coerce_cells(xs, xk), coerce_cells(ys, yk))),
    )


def _matrix_table(trace: dict) -> DataTable:
    z = trace.get("z")
    if not isinstance(z, list) or not all(isinstance(r, list) for r in z):
        raise MalformedSpec("plotly heatmap: z must be a 2D array")
    rows = []
    for yi, zrow in enumerate(z):
        for xi, value in enumerate(zrow):
            if not is_number(value):
                raise MalformedSpec("plotly heatmap: z cells must be finite numbers")
            rows.append((float(xi), float(yi), float(value)))
    columns = (
        Column("x", ColumnKind.NUMBER),
        Column("y", ColumnKind.NUMBER),
        Column("value", ColumnKind.NUMBER),
    )
    return DataTable(columns=columns, rows=tuple(rows))


def _tree_table(trace: dict) -> DataTable:
    labels = trace.get("labels")
    parents = trace.get("parents")
    values = trace.get("values")
    if not (isinstance(labels, list) and isinstance(parents, list) and isinstance(values, list)):
        raise MalformedSpec("plotly treemap: labels, parents, and values arrays required")
    if not (len(labels) == len(parents) == len(values)):
        raise MalformedSpec("plotly treemap: labels/parents/values lengths differ")
    by_label = {str(l): str(p) for l, p in zip(labels, parents)}

    def depth_of(label: str, seen: frozenset = frozenset()) -> int:
        parent = by_label.get(label, "")
        if parent == "":
            return 1
        if parent not in by_label or label in seen:
            raise MalformedSpec(f"plotly treemap: parent chain broken at {label!r}")
        return 1 + depth_of(parent, seen | {label})

    has_children = set(by_label.values()) - {""}
    rows = []
    for label, value in zip(labels, values):
        if not is_number(value):
            raise MalformedSpec("plotly treemap: values must be finite numbers")
        label = str(label)
        rows.append((label, float(value), float(depth_of(label)), 0.0 if label in has_children else 1.0))
    columns = (
        Column("name", ColumnKind.TEXT),
        Column("value", ColumnKind.NUMBER),
        Column("depth", ColumnKind.NUMBER),
        Column("leaf", ColumnKind.NUMBER),
    )
    return DataTable(columns=columns, rows=tuple(rows))


def _color_scale(trace: dict, table: DataTable) -> ColorScale | None:
    stops = trace.get("colorscale")
    if not (isinstance(stops, list) and len(stops) >= 2):
        return None
    first, last = stops[0], stops[-1]
    if not (isinstance(first, list) and isinstance(last, list) and len(first) == 2 and len(last) == 2):
        return None
    lo, hi = trace.get("zmin"), trace.get("zmax")
    if not (is_number(lo) and is_number(hi)):
        idx = table.column_index("value")
        if idx is None or not table.rows:
            return None
        cells = [row[idx] for row in table.rows]
        lo, hi = min(cells), max(cells)
    return ColorScale(
        domain_min=float(lo),
        domain_max=float(hi),
        min_color=parse_color(first[1]),
        max_color=parse_color(last[1]),
    )


def parse_plotly(figure_text: str) -> ChartModel:
    figure = load_json_object(figure_text, "plotly figure")

    traces = figure.get("data")
    if not isinstance(traces, list) or not traces:
        raise MalformedSpec("plotly figure: data must hold at least one trace")
    trace = traces[0]
    if not isinstance(trace, dict):
        raise MalformedSpec("plotly figure: traces must be objects")
    layout = figure.get("layout")
    layout = layout if isinstance(layout, dict) else {}

    chart_type = _infer_type(trace)
    if chart_type is ChartType.TREEMAP:
        table = _tree_table(trace)
    elif chart_type is ChartType.CHANGE_MATRIX:
        table = _matrix_table(trace)
    else:
        table = _xy_table(trace)

    name = trace.get("name")
    fill = trace.get("fillcolor")
    second_fill = None
    if len(traces) > 1 and isinstance(traces[1], dict):
        second_fill = traces[1].get("fillcolor")

    return ChartModel(
        grammar=Grammar.PLOTLY,
        chart_type=chart_type,
        data=table,
        title=title_text(layout.get("title")),
        x_axis=_axis_info(layout, "xaxis", trace.get("x") if isinstance(trace.get("x"), list) else None),
        y_axis=_axis_info(layout, "yaxis", trace.get("y") if isinstance(trace.get("y"), list) else None),
        color_scale=_color_scale(trace, table),
        legend_title=name if isinstance(name, str) and name.strip() else None,
        width=float(layout["width"]) if is_number(layout.get("width")) else None,
        height=float(layout["height"]) if is_number(layout.get("height")) else None,
        series_count=len(traces),
        positive_band_color=parse_color(fill) if isinstance(fill, str) else None,
        negative_band_color=parse_color(second_fill) if isinstance(second_fill, str) else None,
    )
