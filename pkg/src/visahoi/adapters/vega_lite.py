"""Vega-Lite spec subset -> ChartModel."""

from __future__ import annotations

from ..errors import MalformedSpec, UnsupportedMark
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

SUPPORTED_MARKS = {"bar", "point", "circle", "rect", "area"}

_AXIS_KINDS = {
    "nominal": AxisKind.CATEGORICAL,
    "ordinal": AxisKind.CATEGORICAL,
    "quantitative": AxisKind.QUANTITATIVE,
    "temporal": AxisKind.TEMPORAL,
}


def _mark_name(mark: object) -> str | None:
    if isinstance(mark, str):
        return mark
    if isinstance(mark, dict) and isinstance(mark.get("type"), str):
        return mark["type"]
    return None


def _mark_color(mark: object) -> str | None:
    if isinstance(mark, dict) and isinstance(mark.get("color"), str):
        return mark["color"]
    return None


def _channel(encoding: dict, name: str) -> dict | None:
    ch = encoding.get(name)
    return ch if isinstance(ch, dict) else None


def _axis_info(channel: dict | None) -> AxisInfo | None:
    if channel is None:
        return None
    kind = _AXIS_KINDS.get(str(channel.get("type", "")).lower())
    if kind is None:
        return None
    field = channel.get("field")
    field = field if isinstance(field, str) else None
    axis = channel.get("axis")
    title = title_text(axis.get("title")) if isinstance(axis, dict) else None
    # Field name doubles as the axis title when none is set explicitly.
    if title is None:
        title = field
    return AxisInfo(kind=kind, title=title, field=field)


def _color_scale(channel: dict | None, rows: list[dict]) -> ColorScale | None:
    if channel is None or str(channel.get("type", "")).lower() != "quantitative":
        return None
    scale = channel.get("scale")
    if not isinstance(scale, dict):
        return None
    rng = scale.get("range")
    if not isinstance(rng, list) or len(rng) < 2:
        return None
    min_color = parse_color(rng[0])
    max_color = parse_color(rng[-1])
    domain = scale.get("domain")
    if isinstance(domain, list) and len(domain) == 2 and all(is_number(v) for v in domain):
        lo, hi = float(domain[0]), float(domain[1])
    else:
        field = channel.get("field")
        values = [row.get(field) for row in rows if is_number(row.get(field))]
        if not values:
            return None
        lo, hi = min(values), max(values)
    return ColorScale(domain_min=lo, domain_max=hi, min_color=min_color, max_color=max_color)


def _data_rows(spec: dict) -> list[dict]:
    data = spec.get("data")
    if not isinstance(data, dict) or "values" not in data:
        raise MalformedSpec("vega-lite spec: inline data.values required")
    values = data["values"]
    if not isinstance(values, list) or not all(isinstance(r, dict) for r in values):
        raise MalformedSpec("vega-lite spec: data.values must be a list of objects")
    return values


def _table(rows: list[dict], fields: list[str], names: list[str] | None = None) -> DataTable:
    """Project ``fields`` out of the row dicts; ``names`` renames columns
    (used to canonicalize matrix tables to x/y/value)."""
    fields = [f for f in fields if f]
    names = names if names is not None else fields
    kinds = {}
    for f in fields:
        kinds[f] = column_kind([row.get(f) for row in rows])
    columns = tuple(Column(name=n, kind=kinds[f]) for n, f in zip(names, fields))
    table_rows = []
    for row in rows:
        cells = []
        for f in fields:
            cells.extend(coerce_cells([row.get(f)], kinds[f]))
        table_rows.append(tuple(cells))
    return DataTable(columns=columns, rows=tuple(table_rows))


def _infer_type(mark: str, has_layer: bool, color_scale: ColorScale | None) -> ChartType:
    if mark == "bar":
        return ChartType.BAR_CHART
    if mark in ("point", "circle"):
        return ChartType.SCATTERPLOT
    if mark == "rect":
        # A rect grid is only a change matrix when a quantitative color ramp drives it.
        return ChartType.CHANGE_MATRIX if color_scale is not None else ChartType.GENERIC
    if mark == "area":
        return ChartType.HORIZON_GRAPH if has_layer else ChartType.GENERIC
    return ChartType.GENERIC


def parse_vega_lite(spec_text: str) -> ChartModel:
    spec = load_json_object(spec_text, "vega-lite spec")

    layers = spec.get("layer")
    has_layer = isinstance(layers, list) and len(layers) > 0
    mark = _mark_name(spec.get("mark"))
    first_layer = layers[0] if has_layer and isinstance(layers[0], dict) else None
    if mark is None and first_layer is not None:
        mark = _mark_name(first_layer.get("mark"))
    if mark is None:
        raise MalformedSpec("vega-lite spec: missing mark")
    if mark not in SUPPORTED_MARKS:
        raise UnsupportedMark(f"vega-lite mark {mark!r} is not supported")

    rows = _data_rows(spec)

    encoding = spec.get("encoding")
    encoding = dict(encoding) if isinstance(encoding, dict) else {}
    if first_layer is not None and isinstance(first_layer.get("encoding"), dict):
        merged = dict(encoding)
        merged.update(first_layer["encoding"])
        encoding = merged

    x_axis = _axis_info(_channel(encoding, "x"))
    y_axis = _axis_info(_channel(encoding, "y"))
    color_channel = _channel(encoding, "color")
    color_scale = _color_scale(color_channel, rows)

    legend_title = None
    if color_channel is not None:
        legend = color_channel.get("legend")
        legend_title = title_text(legend.get("title")) if isinstance(legend, dict) else None
        if legend_title is None and isinstance(color_channel.get("title"), str):
            legend_title = color_channel["title"]

    chart_type = _infer_type(mark, has_layer, color_scale)

    fields = []
    for axis in (x_axis, y_axis):
        if axis is not None and axis.field:
            fields.append(axis.field)
    color_field = color_channel.get("field") if color_channel is not None else None
    if isinstance(color_field, str):
        fields.append(color_field)
    names = None
    if chart_type is ChartType.CHANGE_MATRIX and len(fields) == 3:
        names = ["x", "y", "value"]

    positive = negative = None
    if has_layer:
        colors = [_mark_color(l.get("mark")) for l in layers if isinstance(l, dict)]
        colors = [c for c in colors if c]
        if colors:
            positive = parse_color(colors[0])
        if len(colors) > 1:
            negative = parse_color(colors[1])

    return ChartModel(
        grammar=Grammar.VEGA_LITE,
        chart_type=chart_type,
        data=_table(rows, fields, names),
        title=title_text(spec.get("title")),
        x_axis=x_axis,
        y_axis=y_axis,
        color_scale=color_scale,
        legend_title=legend_title,
        width=float(spec["width"]) if is_number(spec.get("width")) else None,
        height=float(spec["height"]) if is_number(spec.get("height")) else None,
        series_count=len(layers) if has_layer else 1,
        positive_band_color=positive,
        negative_band_color=negative,
    )
