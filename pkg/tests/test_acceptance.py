"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``)."""

from __future__ import annotations

import functools
import json
import random
import re
import time
from pathlib import Path
from types import MappingProxyType

import pytest

from visahoi.bundle import SCHEMA_VERSION, parse_bundle, serialize_bundle
from visahoi.cli import main
from visahoi.core import ContextRegistry, default_stages, default_templates, generate_messages
from visahoi.errors import SchemaVersionMismatch
from visahoi.features import ExtractionResult, Feature, extract_features, interpolate_color
from visahoi.model import ChartType, ColorScale, Grammar, Rgb
from visahoi.pipeline import generate_bundle
from visahoi.svg.anchor import Coords
from visahoi.svg.dom import parse_svg
from visahoi.svg.query import find_by_text, query_selector, select_extremum

from conftest import SPEC_FIXTURES, SVG_BY_CHART, load_spec, load_svg, spec_path, spec_without_title, svg_path
from test_bundle import annotated_minus_overlay, structural_nodes
from test_svg import SELECTOR_POOL, TEXT_POOL, oracle_extremum, oracle_find_text, oracle_query, random_svg


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL")
                raise
            print(f"\nACCEPTANCE {name}: PASS")
            return result

        return wrapper

    return decorate


def build(stem: str, grammar: str, chart: str, *, svg: bool = True, spec_text: str | None = None):
    return generate_bundle(
        grammar=Grammar(grammar),
        spec_text=spec_text if spec_text is not None else load_spec(stem),
        explicit_type=ChartType(chart),
        svg_text=load_svg(chart) if svg else None,
        context_key=f"acc-{stem}",
        registry=ContextRegistry(),
    )


PLAIN_TEXT = re.compile(r"<[^>]+>")


@criterion("verbatim-message-reproduction")
def test_verbatim_message_reproduction():
    started = time.monotonic()
    horizon = build("horizon.plotly", "plotly", "horizon-graph").bundle
    horizon_texts = [PLAIN_TEXT.sub("", m.text) for m in horizon.messages if m.stage_id == "reading"]
    assert (
        "The horizon graph shows the Average temperature in Oslo, Norway in 2018."
        in horizon_texts
    )
    treemap = build("treemap.echarts", "echarts", "treemap").bundle
    treemap_texts = [m.text for m in treemap.messages]
    assert (
        "The size of each rectangle represents a quantitative value associated with each element in the hierarchy."
        in treemap_texts
    )
    assert time.monotonic() - started < 1.0


@criterion("coverage-matrix")
def test_coverage_matrix(tmp_path):
    covered_grammars: dict[str, set[str]] = {}
    for stem, grammar, chart in SPEC_FIXTURES:
        argv = [
            "generate", "--grammar", grammar, "--spec", str(spec_path(stem)),
            "--type", chart, "--svg", str(svg_path(chart)), "--context-key", "cov",
        ]
        first = tmp_path / f"{stem}-1.bundle.json"
        second = tmp_path / f"{stem}-2.bundle.json"
        assert main(argv + ["-o", str(first)]) == 0
        assert main(argv + ["-o", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

        bundle = json.loads(first.read_text(encoding="utf-8"))
        per_stage = {s["id"]: 0 for s in bundle["stages"]}
        for message in bundle["messages"]:
            per_stage[message["stageId"]] += 1
        assert all(count >= 1 for count in per_stage.values()), (stem, per_stage)
        covered_grammars.setdefault(chart, set()).add(grammar)

    assert set(covered_grammars) == {
        "scatterplot", "bar-chart", "change-matrix", "treemap", "horizon-graph",
    }
    assert covered_grammars["scatterplot"] == {"vega-lite", "echarts", "plotly"}
    assert covered_grammars["bar-chart"] == {"vega-lite", "echarts", "plotly"}


@criterion("requires-filter-property")
def test_requires_filter_property():
    # Part 1: deleting the title drops exactly the chartTitle templates.
    for stem, grammar, chart in SPEC_FIXTURES:
        full = build(stem, grammar, chart, svg=False).bundle
        untitled = build(stem, grammar, chart, svg=False, spec_text=spec_without_title(stem)).bundle
        full_ids = {m.id for m in full.messages}
        untitled_ids = {m.id for m in untitled.messages}
        catalog = default_templates(ChartType(chart))
        title_indices = {i for i, t in enumerate(catalog) if "chartTitle" in t.requires}
        expected_gone = {f"visahoi-message-acc-{stem}-{i}" for i in title_indices} & full_ids
        assert full_ids - untitled_ids == expected_gone, stem
        assert untitled_ids <= full_ids

    # Part 2: 500 random feature subsets, message sets shrink monotonically.
    pool = {
        "chartTitle": "T",
        "xAxisTitle": "X",
        "yAxisTitle": "Y",
        "minValue": "1.00",
        "maxValue": "9.00",
        "minColor": "#ffffff",
        "maxColor": "#000000",
        "dataPointCount": "12",
        "largestNodeLabel": "big",
        "largestNodeValue": "5.00",
        "hierarchyDepth": "2",
        "positiveBandColor": "#a1d99b",
        "interactionHint": "hover",
    }
    chart_types = [
        ChartType.SCATTERPLOT,
        ChartType.BAR_CHART,
        ChartType.CHANGE_MATRIX,
        ChartType.TREEMAP,
        ChartType.HORIZON_GRAPH,
    ]
    rng = random.Random(20240903)
    registry = ContextRegistry()
    stages = default_stages()

    def ids_for(chart_type, keys):
        features = {
            key: Feature(key=key, value=pool[key], anchor=Coords(1, 1)) for key in keys
        }
        extraction = ExtractionResult(
            features=MappingProxyType(features),
            chart_type=chart_type,
            chart_width=600,
            chart_height=400,
        )
        messages = generate_messages(
            extraction, default_templates(chart_type), stages, "p", registry
        )
        return {m.id for m in messages}

    violations = 0
    for _ in range(500):
        chart_type = rng.choice(chart_types)
        base_keys = {k for k in pool if rng.random() < 0.7}
        sub_keys = {k for k in base_keys if rng.random() < 0.7}
        if not ids_for(chart_type, sub_keys) <= ids_for(chart_type, base_keys):
            violations += 1
    assert violations == 0


@criterion("anchor-oracle")
def test_anchor_oracle():
    rng = random.Random(20240904)
    for _ in range(100):
        doc = parse_svg(random_svg(rng))
        for sel in SELECTOR_POOL:
            assert query_selector(doc, sel) == oracle_query(doc, sel)
        for value in TEXT_POOL:
            assert find_by_text(doc, value) is oracle_find_text(doc, value)
        for sel, measure, direction in (
            ("rect", "rectArea", "max"),
            ("rect", "rectHeight", "min"),
            ("circle", "cy", "max"),
            (".mark", "cx", "min"),
        ):
            assert select_extremum(doc, sel, measure, direction) is oracle_extremum(
                doc, sel, measure, direction
            )


@criterion("color-mapping")
def test_color_mapping():
    rng = random.Random(20240905)
    for _ in range(200):
        # Integer bounds keep the true midpoint representable, so the exact
        # #808080 requirement is well-posed for every sampled domain.
        lo = rng.randint(-10**6, 10**6)
        span = rng.randint(1, 10**6)
        hi = lo + span
        ramp = ColorScale(lo, hi, Rgb(255, 255, 255), Rgb(0, 0, 0))
        assert interpolate_color(ramp, lo) == Rgb(255, 255, 255)
        assert interpolate_color(ramp, hi) == Rgb(0, 0, 0)
        assert interpolate_color(ramp, lo + span / 2).to_hex() == "#808080"

        scale = ColorScale(
            0, 1,
            Rgb(rng.randrange(256), rng.randrange(256), rng.randrange(256)),
            Rgb(rng.randrange(256), rng.randrange(256), rng.randrange(256)),
        )
        t = rng.random()
        got = interpolate_color(scale, t)
        for channel, c0, c1 in zip(got, scale.min_color, scale.max_color):
            lerp = (c0 / 255 + t * (c1 / 255 - c0 / 255)) * 255
            assert abs(channel - round(lerp)) <= 1


@criterion("svg-preservation")
def test_svg_preservation():
    from visahoi.annotate import annotate_svg
    from visahoi.pipeline import resolve_bundle_anchors

    for stem, grammar, chart in SPEC_FIXTURES:
        svg_text = load_svg(chart)
        bundle = build(stem, grammar, chart).bundle
        resolved, _ = resolve_bundle_anchors(bundle, svg_text)
        annotated, _ = annotate_svg(svg_text, bundle, resolved)
        assert structural_nodes(annotated_minus_overlay(annotated)) == structural_nodes(
            parse_svg(svg_text)
        ), stem
        again, _ = annotate_svg(annotated, bundle, resolved)
        assert again == annotated, stem


@criterion("bundle-round-trip")
def test_bundle_round_trip():
    for stem, grammar, chart in SPEC_FIXTURES:
        bundle = build(stem, grammar, chart).bundle
        canonical = serialize_bundle(bundle)
        assert serialize_bundle(parse_bundle(canonical)) == canonical, stem
        assert parse_bundle(canonical) == bundle, stem
    with pytest.raises(SchemaVersionMismatch):
        parse_bundle(canonical.replace(SCHEMA_VERSION, "visahoi-bundle/2"))


@criterion("cli-exit-codes")
def test_cli_exit_codes(tmp_path):
    # malformed spec -> 1, no output
    bad = tmp_path / "bad.json"
    bad.write_text("{oops", encoding="utf-8")
    out = tmp_path / "a.bundle.json"
    assert main([
        "generate", "--grammar", "plotly", "--spec", str(bad),
        "--type", "scatterplot", "-o", str(out),
    ]) == 1
    assert not out.exists()

    # --strict with a title anchor the SVG cannot resolve -> 2, no output
    svg_without_title = tmp_path / "untitled.svg"
    svg_without_title.write_text(
        load_svg("horizon-graph").replace("Average temperature in Oslo, Norway in 2018", "other text"),
        encoding="utf-8",
    )
    out2 = tmp_path / "b.bundle.json"
    assert main([
        "generate", "--grammar", "plotly", "--spec", str(spec_path("horizon.plotly")),
        "--type", "horizon", "--svg", str(svg_without_title), "--strict", "-o", str(out2),
    ]) == 2
    assert not out2.exists()

    # success -> 0, file exists
    out3 = tmp_path / "c.bundle.json"
    assert main([
        "generate", "--grammar", "plotly", "--spec", str(spec_path("horizon.plotly")),
        "--type", "horizon", "--svg", str(svg_path("horizon-graph")), "-o", str(out3),
    ]) == 0
    assert out3.exists()
