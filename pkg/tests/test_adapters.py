from __future__ import annotations

import json

import pytest

from visahoi.adapters import parse_echarts, parse_plotly, parse_spec, parse_vega_lite
from visahoi.errors import (
    MalformedSpec,
    UnsupportedMark,
    UnsupportedSeriesType,
    UnsupportedTraceType,
)
from visahoi.model import AxisKind, ChartType, ColumnKind, Grammar, Rgb, detect_chart_type

from conftest import SPEC_FIXTURES, load_spec


BAR_VL = json.dumps(
    {
        "mark": "bar",
        "title": "T",
        "encoding": {
            "x": {"field": "c", "type": "nominal"},
            "y": {"field": "v", "type": "quantitative"},
        },
        "data": {"values": [{"c": "a", "v": 1}]},
    }
)


class TestVegaLite:
    def test_bar_direct_mapping(self):
        model = parse_vega_lite(BAR_VL)
        assert model.grammar is Grammar.VEGA_LITE
        assert model.chart_type is ChartType.BAR_CHART
        assert model.title == "T"
        assert model.x_axis.kind is AxisKind.CATEGORICAL
        assert model.x_axis.field == "c"
        assert model.y_axis.kind is AxisKind.QUANTITATIVE
        assert model.y_axis.field == "v"
        assert model.data.row_count == 1

    def test_axis_title_defaults_to_field(self):
        model = parse_vega_lite(BAR_VL)
        assert model.x_axis.title == "c"
        assert model.y_axis.title == "v"

    def test_missing_title_stays_absent(self):
        spec = json.loads(BAR_VL)
        del spec["title"]
        model = parse_vega_lite(json.dumps(spec))
        assert model.title is None

    def test_rect_with_quantitative_color_is_change_matrix(self):
        spec = {
            "mark": "rect",
            "encoding": {
                "x": {"field": "a", "type": "nominal"},
                "y": {"field": "b", "type": "nominal"},
                "color": {
                    "field": "v",
                    "type": "quantitative",
                    "scale": {"range": ["#ffffff", "#08306b"]},
                },
            },
            "data": {
                "values": [
                    {"a": "x", "b": "p", "v": 1},
                    {"a": "x", "b": "q", "v": 5},
                    {"a": "y", "b": "p", "v": 3},
                    {"a": "y", "b": "q", "v": 2},
                ]
            },
        }
        model = parse_vega_lite(json.dumps(spec))
        assert model.chart_type is ChartType.CHANGE_MATRIX
        assert model.color_scale.min_color == Rgb(255, 255, 255)
        assert model.color_scale.max_color == Rgb(0x08, 0x30, 0x6B)
        # Domain comes from the color field's data extent.
        assert model.color_scale.domain_min == 1
        assert model.color_scale.domain_max == 5
        # Matrix tables are canonicalized to x/y/value columns.
        assert [c.name for c in model.data.columns] == ["x", "y", "value"]

    def test_rect_without_color_scale_is_generic(self):
        spec = {
            "mark": "rect",
            "encoding": {"x": {"field": "a", "type": "nominal"}},
            "data": {"values": [{"a": "x"}]},
        }
        assert parse_vega_lite(json.dumps(spec)).chart_type is ChartType.GENERIC

    def test_layered_area_is_horizon(self):
        model = parse_vega_lite(load_spec("horizon.vl"))
        assert model.chart_type is ChartType.HORIZON_GRAPH
        assert model.positive_band_color == Rgb(0xA1, 0xD9, 0x9B)
        assert model.negative_band_color == Rgb(0x31, 0xA3, 0x54)
        assert model.series_count == 2

    def test_unsupported_mark(self):
        spec = json.loads(BAR_VL)
        spec["mark"] = "geoshape"
        with pytest.raises(UnsupportedMark):
            parse_vega_lite(json.dumps(spec))

    def test_missing_mark(self):
        spec = json.loads(BAR_VL)
        del spec["mark"]
        with pytest.raises(MalformedSpec):
            parse_vega_lite(json.dumps(spec))

    def test_url_data_rejected(self):
        spec = json.loads(BAR_VL)
        spec["data"] = {"url": "https://example.com/data.json"}
        with pytest.raises(MalformedSpec):
            parse_vega_lite(json.dumps(spec))

    def test_invalid_json(self):
        with pytest.raises(MalformedSpec):
            parse_vega_lite("{not json")


class TestECharts:
    def test_scatter_direct_mapping(self):
        model = parse_echarts('{"title":{"text":"T"},"series":[{"type":"scatter","data":[[1,2]]}]}')
        assert model.chart_type is ChartType.SCATTERPLOT
        assert model.title == "T"
        assert model.data.rows == ((1.0, 2.0),)

    def test_treemap_hierarchy(self):
        model = parse_echarts('{"series":[{"type":"treemap","data":[{"name":"a","value":3}]}]}')
        assert model.chart_type is ChartType.TREEMAP
        assert model.title is None
        names = [c.name for c in model.data.columns]
        assert names == ["name", "value", "depth", "leaf"]
        assert model.data.rows == (("a", 3.0, 1.0, 1.0),)

    def test_nested_treemap_depth_and_parent_sum(self):
        model = parse_echarts(load_spec("treemap.echarts"))
        rows = {r[0]: r for r in model.data.rows}
        assert rows["Health"][1] == 111.0  # sum of children
        assert rows["Health"][3] == 0.0  # not a leaf
        assert rows["Hospitals"][2] == 2.0  # depth
        assert rows["Housing"][3] == 1.0

    def test_heatmap_visual_map(self):
        option = (
            '{"series":[{"type":"heatmap","data":[[0,0,1]]}],'
            '"visualMap":{"min":0,"max":10,"inRange":{"color":["#fff","#000"]}}}'
        )
        model = parse_echarts(option)
        assert model.chart_type is ChartType.CHANGE_MATRIX
        scale = model.color_scale
        assert (scale.domain_min, scale.domain_max) == (0, 10)
        assert scale.min_color == Rgb(255, 255, 255)  # 3-digit hex expanded
        assert scale.max_color == Rgb(0, 0, 0)

    def test_axis_kinds(self):
        model = parse_echarts(load_spec("bar.echarts"))
        assert model.x_axis.kind is AxisKind.CATEGORICAL
        assert model.x_axis.title == "Region"
        assert model.y_axis.kind is AxisKind.QUANTITATIVE

    def test_bar_categories_paired_with_values(self):
        model = parse_echarts(load_spec("bar.echarts"))
        assert model.data.rows[0] == ("North", 52000.0)
        assert model.data.columns[0].kind is ColumnKind.TEXT

    def test_custom_series_is_horizon(self):
        model = parse_echarts(load_spec("horizon.echarts"))
        assert model.chart_type is ChartType.HORIZON_GRAPH
        assert model.positive_band_color == Rgb(0xA1, 0xD9, 0x9B)

    def test_unsupported_series(self):
        with pytest.raises(UnsupportedSeriesType):
            parse_echarts('{"series":[{"type":"pie","data":[1]}]}')

    def test_missing_series(self):
        with pytest.raises(MalformedSpec):
            parse_echarts('{"title":{"text":"T"}}')


class TestPlotly:
    def test_scatter_layout_titles(self):
        figure = (
            '{"data":[{"type":"scatter","mode":"markers","x":[1],"y":[2]}],'
            '"layout":{"title":{"text":"T"},"yaxis":{"title":{"text":"Y"}}}}'
        )
        model = parse_plotly(figure)
        assert model.chart_type is ChartType.SCATTERPLOT
        assert model.title == "T"
        assert model.y_axis.title == "Y"

    def test_treemap_classification(self):
        figure = '{"data":[{"type":"treemap","labels":["a"],"parents":[""],"values":[3]}]}'
        model = parse_plotly(figure)
        assert model.chart_type is ChartType.TREEMAP
        assert model.data.rows == (("a", 3.0, 1.0, 1.0),)

    def test_empty_trace_list_rejected(self):
        with pytest.raises(MalformedSpec):
            parse_plotly('{"data":[]}')

    def test_line_mode_is_generic(self):
        figure = '{"data":[{"type":"scatter","mode":"lines","x":[1],"y":[2]}]}'
        assert parse_plotly(figure).chart_type is ChartType.GENERIC

    def test_series_count_counts_extra_traces(self):
        model = parse_plotly(load_spec("horizon.plotly"))
        assert model.series_count == 2
        assert model.positive_band_color == Rgb(0xA1, 0xD9, 0x9B)
        assert model.negative_band_color == Rgb(0x31, 0xA3, 0x54)

    def test_unsupported_trace(self):
        with pytest.raises(UnsupportedTraceType):
            parse_plotly('{"data":[{"type":"pie","values":[1]}]}')

    def test_heatmap_colorscale(self):
        figure = (
            '{"data":[{"type":"heatmap","z":[[1,2],[3,4]],'
            '"colorscale":[[0,"#ffffff"],[1,"#000000"]]}]}'
        )
        model = parse_plotly(figure)
        assert model.chart_type is ChartType.CHANGE_MATRIX
        assert model.color_scale.domain_min == 1.0
        assert model.color_scale.domain_max == 4.0


class TestDetectChartType:
    def test_explicit_overrides_inference(self):
        model = parse_vega_lite(BAR_VL)
        assert detect_chart_type(model, ChartType.HORIZON_GRAPH) is ChartType.HORIZON_GRAPH

    def test_inference_identity(self):
        model = parse_echarts(load_spec("scatter.echarts"))
        assert detect_chart_type(model, None) is ChartType.SCATTERPLOT

    def test_unrecognized_falls_back_to_generic(self):
        figure = '{"data":[{"type":"scatter","mode":"lines","x":[1],"y":[2]}]}'
        model = parse_plotly(figure)
        assert detect_chart_type(model, None) is ChartType.GENERIC


class TestCorpusProperties:
    @pytest.mark.parametrize("stem,grammar,chart", SPEC_FIXTURES)
    def test_fixture_parses(self, stem, grammar, chart):
        model = parse_spec(Grammar(grammar), load_spec(stem))
        assert model.grammar.value == grammar

    @pytest.mark.parametrize("stem,grammar,chart", SPEC_FIXTURES)
    def test_truncation_fuzz_total(self, stem, grammar, chart):
        """Truncated inputs must produce typed errors, never crashes."""
        text = load_spec(stem)
        for cut in range(0, len(text), max(1, len(text) // 40)):
            try:
                parse_spec(Grammar(grammar), text[:cut])
            except MalformedSpec:
                pass

    @pytest.mark.parametrize("stem,grammar,chart", SPEC_FIXTURES)
    def test_determinism(self, stem, grammar, chart):
        text = load_spec(stem)
        assert parse_spec(Grammar(grammar), text) == parse_spec(Grammar(grammar), text)

    @pytest.mark.parametrize("stem,grammar,chart", SPEC_FIXTURES)
    def test_unknown_top_level_key_ignored(self, stem, grammar, chart):
        text = load_spec(stem)
        augmented = json.loads(text)
        augmented["zzz_unknown_extension"] = {"ignored": True}
        assert parse_spec(Grammar(grammar), json.dumps(augmented)) == parse_spec(
            Grammar(grammar), text
        )

    @pytest.mark.parametrize("base", ["scatter", "bar"])
    def test_adapter_equivalence_triples(self, base):
        """One logical chart in all three grammars agrees on the
        comparable surface."""
        models = [
            parse_vega_lite(load_spec(f"{base}.vl")),
            parse_echarts(load_spec(f"{base}.echarts")),
            parse_plotly(load_spec(f"{base}.plotly")),
        ]
        reference = models[0]
        for model in models[1:]:
            assert model.chart_type is reference.chart_type
            assert model.title == reference.title
            assert model.x_axis.title == reference.x_axis.title
            assert model.y_axis.title == reference.y_axis.title
            assert model.color_scale == reference.color_scale
