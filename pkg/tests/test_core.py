from __future__ import annotations

import re
from types import MappingProxyType

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from visahoi.core import (
    ContextRegistry,
    apply_customization,
    create_basic_message,
    default_stages,
    default_templates,
    generate_messages,
    parse_patch,
    register_context,
)
from visahoi.core.templates import MessageTemplate, parse_catalog, template_from_dict
from visahoi.errors import EmptyText, MalformedPatch, MalformedTemplate, UnknownStage
from visahoi.features import ExtractionResult, Feature
from visahoi.model import ChartType
from visahoi.svg.anchor import Coords


def extraction(chart_type: ChartType, **values: str) -> ExtractionResult:
    features = {
        key: Feature(key=key, value=value, anchor=Coords(10, 10))
        for key, value in values.items()
    }
    return ExtractionResult(
        features=MappingProxyType(features),
        chart_type=chart_type,
        chart_width=600,
        chart_height=400,
    )


HORIZON_FEATURES = dict(
    chartTitle="Average temperature in Oslo, Norway in 2018",
    yAxisTitle="Average temperature in °C",
    xAxisTitle="Month",
    positiveBandColor="#a1d99b",
    interactionHint="hover the chart",
    minValue="0.20",
    maxValue="21.30",
)


class TestDefaultStages:
    def test_exact_catalog(self):
        stages = default_stages()
        assert [(s.title, s.order) for s in stages] == [
            ("Reading the chart", 1),
            ("Interacting with the chart", 2),
            ("Analyzing the chart", 3),
        ]

    def test_titles_distinct(self):
        titles = [s.title for s in default_stages()]
        assert len(set(titles)) == len(titles)

    def test_orders_strictly_increasing(self):
        orders = [s.order for s in default_stages()]
        assert orders == sorted(orders)
        assert len(set(orders)) == len(orders)


class TestDefaultTemplates:
    def test_horizon_reading_template(self):
        templates = default_templates(ChartType.HORIZON_GRAPH)
        reading = [t for t in templates if t.stage_id == "reading"]
        assert any(
            "The horizon graph shows the <i>{chartTitle}</i>" in t.text_template
            and t.requires == ("chartTitle",)
            for t in reading
        )

    def test_treemap_verbatim_size_sentence(self):
        templates = default_templates(ChartType.TREEMAP)
        assert any(
            t.text_template
            == "The size of each rectangle represents a quantitative value associated with each element in the hierarchy."
            for t in templates
        )

    def test_generic_is_empty(self):
        assert default_templates(ChartType.GENERIC) == []

    def test_every_chart_type_covers_all_three_stages(self):
        for chart_type in (
            ChartType.SCATTERPLOT,
            ChartType.BAR_CHART,
            ChartType.CHANGE_MATRIX,
            ChartType.TREEMAP,
            ChartType.HORIZON_GRAPH,
        ):
            stages = {t.stage_id for t in default_templates(chart_type)}
            assert stages == {"reading", "interacting", "analyzing"}

    def test_unknown_placeholder_is_load_error(self):
        with pytest.raises(MalformedTemplate):
            template_from_dict(
                {
                    "templateId": "bad",
                    "chartTypes": ["scatterplot"],
                    "requires": ["chartTitle"],
                    "textTemplate": "Uses {selfInventedKey}",
                    "titleTemplate": "",
                    "stageId": "reading",
                    "order": 1,
                    "tooltipPlacement": "top",
                    "anchorFeature": "chartTitle",
                }
            )

    def test_anchor_feature_must_be_required(self):
        with pytest.raises(MalformedTemplate):
            template_from_dict(
                {
                    "templateId": "bad",
                    "chartTypes": [],
                    "requires": ["minValue"],
                    "textTemplate": "x",
                    "titleTemplate": "",
                    "stageId": "reading",
                    "order": 1,
                    "tooltipPlacement": "top",
                    "anchorFeature": "chartTitle",
                }
            )

    def test_catalog_object_keyed_by_chart_type(self):
        text = '{"scatterplot": [], "bar-chart": []}'
        assert parse_catalog(text, ChartType.SCATTERPLOT) == []


class TestGenerateMessages:
    def test_horizon_title_message_text(self):
        msgs = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        texts = [m.text for m in msgs]
        assert (
            "The horizon graph shows the <i>Average temperature in Oslo, Norway in 2018</i>."
            in texts
        )

    def test_missing_feature_drops_only_that_message(self):
        registry = ContextRegistry()
        full = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            registry,
        )
        reduced_features = {k: v for k, v in HORIZON_FEATURES.items() if k != "chartTitle"}
        reduced = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **reduced_features),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            registry,
        )
        gone = {m.id for m in full} - {m.id for m in reduced}
        assert len(gone) == 1
        survivors = {m.id: m for m in reduced}
        for message in full:
            if message.id in survivors:
                assert survivors[message.id] == message

    def test_ids_use_catalog_index(self):
        catalog = default_templates(ChartType.SCATTERPLOT)
        template = catalog[0]
        # blow the catalog up to ten entries so index 8 exists
        padded = []
        for i in range(10):
            padded.append(
                MessageTemplate(
                    template_id=f"t{i}",
                    chart_types=frozenset({ChartType.SCATTERPLOT}),
                    requires=("chartTitle",),
                    text_template="Title is {chartTitle}.",
                    title_template="Reading the chart",
                    stage_id="reading",
                    order=i + 1,
                    tooltip_placement="top",
                    anchor_feature="chartTitle",
                )
            )
        msgs = generate_messages(
            extraction(ChartType.SCATTERPLOT, chartTitle="T"),
            padded,
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        ids = [m.id for m in msgs]
        assert "visahoi-message-ctx1-8" in ids
        markers = [m.marker_id for m in msgs]
        assert "visahoi-marker-ctx1-8" in markers
        assert template  # silence unused warning

    def test_output_sorted_by_stage_then_order(self):
        msgs = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        stage_order = {s.id: s.order for s in default_stages()}
        keys = [(stage_order[m.stage_id], m.order) for m in msgs]
        assert keys == sorted(keys)

    def test_no_unexpanded_placeholders(self):
        msgs = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        for message in msgs:
            assert not re.search(r"\{[a-zA-Z.]+\}", message.text)

    def test_unknown_stage_raises(self):
        rogue = MessageTemplate(
            template_id="rogue",
            chart_types=frozenset(),
            requires=("chartTitle",),
            text_template="x",
            title_template="",
            stage_id="ghost",
            order=1,
            tooltip_placement="top",
            anchor_feature="chartTitle",
        )
        with pytest.raises(UnknownStage):
            generate_messages(
                extraction(ChartType.SCATTERPLOT, chartTitle="T"),
                [rogue],
                default_stages(),
                "ctx1",
                ContextRegistry(),
            )

    def test_chart_type_filter(self):
        msgs = generate_messages(
            extraction(ChartType.BAR_CHART, chartTitle="T"),
            default_templates(ChartType.SCATTERPLOT),
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        assert msgs == []

    @settings(max_examples=200)
    @given(keep=st.sets(st.sampled_from(sorted(HORIZON_FEATURES))))
    def test_monotone_filtering(self, keep):
        """messages(E') is a subset of messages(E) whenever E' restricts E."""
        registry = ContextRegistry()
        full_extraction = extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES)
        sub_extraction = full_extraction.subset(keep)
        full_ids = {
            m.id
            for m in generate_messages(
                full_extraction,
                default_templates(ChartType.HORIZON_GRAPH),
                default_stages(),
                "c",
                registry,
            )
        }
        sub_ids = {
            m.id
            for m in generate_messages(
                sub_extraction,
                default_templates(ChartType.HORIZON_GRAPH),
                default_stages(),
                "c",
                registry,
            )
        }
        assert sub_ids <= full_ids

    def test_message_marker_ids_unique_and_paired(self):
        msgs = generate_messages(
            extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
            default_templates(ChartType.HORIZON_GRAPH),
            default_stages(),
            "ctx1",
            ContextRegistry(),
        )
        ids = [m.id for m in msgs]
        assert len(set(ids)) == len(ids)
        for message in msgs:
            n = message.id.rsplit("-", 1)[1]
            assert message.marker_id == f"visahoi-marker-ctx1-{n}"


class TestCreateBasicMessage:
    def test_appends_after_catalog_indices(self):
        registry = ContextRegistry()
        generate_messages(
            extraction(ChartType.SCATTERPLOT, chartTitle="T"),
            default_templates(ChartType.SCATTERPLOT),
            default_stages(),
            "ctx1",
            registry,
        )
        catalog_size = len(default_templates(ChartType.SCATTERPLOT))
        message = create_basic_message(
            "Clusters of points indicate similar compounds.",
            "Analyzing the chart",
            "analyzing",
            Coords(10, 10),
            1,
            "ctx1",
            default_stages(),
            registry,
        )
        assert message.id == f"visahoi-message-ctx1-{catalog_size}"

    def test_empty_text_rejected(self):
        with pytest.raises(EmptyText):
            create_basic_message(
                "  ", "t", "reading", Coords(0, 0), 1, "c", default_stages(), ContextRegistry()
            )

    def test_two_calls_distinct_ids(self):
        registry = ContextRegistry()
        a = create_basic_message("a", "t", "reading", Coords(0, 0), 1, "c", default_stages(), registry)
        b = create_basic_message("b", "t", "reading", Coords(0, 0), 2, "c", default_stages(), registry)
        assert a.id != b.id

    def test_verbatim_text_no_expansion(self):
        message = create_basic_message(
            "Literal {chartTitle} stays.", "t", "reading", Coords(0, 0), 1, "c",
            default_stages(), ContextRegistry(),
        )
        assert message.text == "Literal {chartTitle} stays."

    def test_unknown_stage(self):
        with pytest.raises(UnknownStage):
            create_basic_message(
                "x", "t", "ghost", Coords(0, 0), 1, "c", default_stages(), ContextRegistry()
            )


class TestRegisterContext:
    def test_requested_key_identity(self):
        assert register_context(ContextRegistry(), "abc") == "abc"

    def test_generated_keys_distinct(self):
        registry = ContextRegistry()
        assert register_context(registry) != register_context(registry)

    def test_idempotent_reregistration(self):
        registry = ContextRegistry()
        register_context(registry, "abc")
        state = registry.state("abc")
        register_context(registry, "abc")
        assert registry.state("abc") is state

    def test_generated_never_collides_with_requested(self):
        registry = ContextRegistry()
        register_context(registry, "visahoi-ctx-0")
        assert register_context(registry) != "visahoi-ctx-0"


def _messages_for_patch():
    registry = ContextRegistry()
    return generate_messages(
        extraction(ChartType.HORIZON_GRAPH, **HORIZON_FEATURES),
        default_templates(ChartType.HORIZON_GRAPH),
        default_stages(),
        "ctx1",
        registry,
    )


class TestApplyCustomization:
    def test_delete_reading_and_analyzing_messages(self):
        msgs = _messages_for_patch()
        doomed = [m.id for m in msgs if m.stage_id in ("reading", "analyzing")]
        patch = [{"op": "deleteMessage", "messageId": mid} for mid in doomed]
        result = apply_customization(msgs, default_stages(), patch)
        assert result.messages
        assert all(m.stage_id == "interacting" for m in result.messages)
        assert result.report == []

    def test_set_message_text_locality(self):
        msgs = _messages_for_patch()
        target = msgs[0].id
        patch = [{"op": "setMessageText", "messageId": target, "text": "New text."}]
        result = apply_customization(msgs, default_stages(), patch)
        by_id = {m.id: m for m in result.messages}
        assert by_id[target].text == "New text."
        for message in msgs[1:]:
            assert by_id[message.id] == message

    def test_delete_stage_cascades(self):
        msgs = _messages_for_patch()
        before_other = [m for m in msgs if m.stage_id != "reading"]
        result = apply_customization(msgs, default_stages(), [{"op": "deleteStage", "stageId": "reading"}])
        assert all(s.id != "reading" for s in result.stages)
        assert all(m.stage_id != "reading" for m in result.messages)
        assert len(result.messages) == len(before_other)

    def test_unknown_ids_reported(self):
        msgs = _messages_for_patch()
        patch = [
            {"op": "setMessageText", "messageId": "visahoi-message-x-99", "text": "y"},
            {"op": "deleteStage", "stageId": "ghost"},
        ]
        result = apply_customization(msgs, default_stages(), patch)
        assert len(result.report) == 2

    def test_nav_and_marker_numbers(self):
        result = apply_customization(
            [],
            default_stages(),
            [
                {"op": "setNav", "showStepper": False, "alignment": "horizontal"},
                {"op": "setMarkerNumbers", "value": False},
            ],
        )
        assert result.nav.show_stepper is False
        assert result.nav.alignment == "horizontal"
        assert result.marker_numbers is False

    def test_add_stage_and_message(self):
        patch = [
            {
                "op": "addStage",
                "stage": {"id": "insights", "title": "Insights", "order": 4, "color": "#123456"},
            },
            {
                "op": "addMessage",
                "message": {
                    "id": "visahoi-message-ctx1-40",
                    "markerId": "visahoi-marker-ctx1-40",
                    "text": "Custom insight.",
                    "title": "Insights",
                    "stageId": "insights",
                    "order": 1,
                    "tooltipPlacement": "top",
                    "anchor": {"kind": "coords", "x": 5, "y": 5},
                },
            },
        ]
        result = apply_customization(_messages_for_patch(), default_stages(), patch)
        assert any(s.id == "insights" for s in result.stages)
        assert any(m.id == "visahoi-message-ctx1-40" for m in result.messages)

    def test_reorder_resorts(self):
        msgs = _messages_for_patch()
        interacting = [m for m in msgs if m.stage_id == "interacting"][0]
        patch = [{"op": "setMessageStage", "messageId": interacting.id, "stageId": "reading"},
                 {"op": "setMessageOrder", "messageId": interacting.id, "order": 0}]
        result = apply_customization(msgs, default_stages(), patch)
        assert result.messages[0].id == interacting.id

    def test_malformed_patch_rejected(self):
        with pytest.raises(MalformedPatch):
            parse_patch('{"op": "deleteMessage"}')
        with pytest.raises(MalformedPatch):
            parse_patch('[{"op": "doesNotExist"}]')
        with pytest.raises(MalformedPatch):
            parse_patch('[{"op": "setNav", "alignment": "diagonal"}]')
