"""End-to-end composition: spec text in, bundle / annotated SVG / preview out.

The command line is a thin shell over these calls so tests and other
frontends can drive the identical behavior in-process.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .adapters import parse_spec
from .annotate import WarningRecord, annotate_svg
from .bundle import ChartMeta, OnboardingBundle
from .core.context import ContextRegistry, default_registry
from .core.customize import NavSettings, apply_customization
from .core.messages import OnboardingMessage, generate_messages
from .core.stages import default_stages
from .core.templates import MessageTemplate, default_templates
from .features import DEFAULT_CHART_HEIGHT, DEFAULT_CHART_WIDTH, extract_features
from .model import ChartType, Grammar, detect_chart_type
from .preview import emit_preview_html
from .svg.anchor import ResolvedAnchor, Unresolved, resolve_anchor
from .svg.dom import SvgDoc, parse_svg


@dataclass
class GenerateResult:
    bundle: OnboardingBundle
    warnings: list[WarningRecord] = field(default_factory=list)
    dropped_messages: int = 0
    patch_report: list[str] = field(default_factory=list)


def _resolve_messages(
    messages: list[OnboardingMessage], doc: SvgDoc
) -> tuple[list[OnboardingMessage], list[WarningRecord], int]:
    kept: list[OnboardingMessage] = []
    warnings: list[WarningRecord] = []
    dropped = 0
    for message in messages:
        if isinstance(message.anchor, ResolvedAnchor):
            kept.append(message)
            continue
        result = resolve_anchor(doc, message.anchor)
        if isinstance(result, Unresolved):
            dropped += 1
            warnings.append(
                WarningRecord(
                    code="dropped-message",
                    message=f"message {message.id} dropped: {result.reason}",
                )
            )
            continue
        kept.append(dataclasses.replace(message, anchor=result))
    return kept, warnings, dropped


def generate_bundle(
    grammar: Grammar,
    spec_text: str,
    explicit_type: ChartType | None = None,
    svg_text: str | None = None,
    context_key: str | None = None,
    templates: list[MessageTemplate] | None = None,
    patch: list[dict] | None = None,
    registry: ContextRegistry | None = None,
) -> GenerateResult:
    registry = registry or default_registry()
    model = parse_spec(grammar, spec_text)
    chart_type = detect_chart_type(model, explicit_type)
    extraction = extract_features(model, chart_type)
    catalog = templates if templates is not None else default_templates(chart_type)
    stages = default_stages()
    key = registry.register(context_key)
    messages = generate_messages(extraction, catalog, stages, key, registry)

    # Catalog entries for this chart type that yielded no message were
    # filtered for missing features; they count as dropped under --strict.
    warnings: list[WarningRecord] = []
    emitted_ids = {m.id for m in messages}
    dropped = 0
    for index, tpl in enumerate(catalog):
        if tpl.chart_types and chart_type not in tpl.chart_types:
            continue
        if f"visahoi-message-{key}-{index}" in emitted_ids:
            continue
        dropped += 1
        missing = [k for k in tpl.requires if k not in extraction.features]
        warnings.append(
            WarningRecord(
                code="dropped-message",
                message=f"template {tpl.template_id} skipped: missing features {missing}",
            )
        )

    doc: SvgDoc | None = None
    if svg_text is not None:
        doc = parse_svg(svg_text)
        messages, resolve_warnings, resolve_dropped = _resolve_messages(messages, doc)
        warnings.extend(resolve_warnings)
        dropped += resolve_dropped

    nav = NavSettings()
    marker_numbers = True
    report: list[str] = []
    if patch:
        outcome = apply_customization(messages, stages, patch, nav, marker_numbers)
        messages, stages = outcome.messages, outcome.stages
        nav, marker_numbers = outcome.nav, outcome.marker_numbers
        report = outcome.report

    if doc is not None:
        width, height = doc.width, doc.height
    else:
        width = model.width if model.width else DEFAULT_CHART_WIDTH
        height = model.height if model.height else DEFAULT_CHART_HEIGHT

    bundle = OnboardingBundle(
        context_key=key,
        chart=ChartMeta(grammar=grammar, chart_type=chart_type, width=width, height=height),
        stages=tuple(stages),
        messages=tuple(messages),
        nav=nav,
        marker_numbers=marker_numbers,
    )
    return GenerateResult(
        bundle=bundle, warnings=warnings, dropped_messages=dropped, patch_report=report
    )


def resolve_bundle_anchors(
    bundle: OnboardingBundle, svg_text: str
) -> tuple[dict[str, ResolvedAnchor], list[WarningRecord]]:
    """Map message id -> coordinates, re-resolving directives the bundle
    still carries unresolved."""
    doc = parse_svg(svg_text)
    resolved: dict[str, ResolvedAnchor] = {}
    warnings: list[WarningRecord] = []
    for message in bundle.messages:
        if isinstance(message.anchor, ResolvedAnchor):
            resolved[message.id] = message.anchor
            continue
        outcome = resolve_anchor(doc, message.anchor)
        if isinstance(outcome, Unresolved):
            warnings.append(
                WarningRecord(
                    code="unresolved-anchor",
                    message=f"message {message.id}: {outcome.reason}",
                )
            )
            continue
        resolved[message.id] = outcome
    return resolved, warnings


def annotate_bundle(bundle: OnboardingBundle, svg_text: str) -> tuple[str, list[WarningRecord]]:
    resolved, warnings = resolve_bundle_anchors(bundle, svg_text)
    annotated, more = annotate_svg(svg_text, bundle, resolved)
    return annotated, warnings + more


def preview_bundle(bundle: OnboardingBundle, svg_text: str) -> tuple[str, list[WarningRecord]]:
    annotated, warnings = annotate_bundle(bundle, svg_text)
    return emit_preview_html(bundle, annotated), warnings
