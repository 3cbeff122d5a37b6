"""Message generation: catalog templates + extracted features -> messages.

A template only becomes a message when every feature it requires was
extracted and its anchor directive is well-formed; everything else is
silently skipped, keeping the surviving catalog indices stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import EmptyText, UnknownStage
from ..features import ExtractionResult
from ..svg.anchor import AnchorDirective, ResolvedAnchor, directive_is_well_formed
from .context import ContextRegistry, default_registry
from .stages import OnboardingStage
from .templates import PLACEHOLDER, MessageTemplate

MESSAGE_ID_PATTERN = re.compile(r"^visahoi-message-(?P<ctx>.+)-(?P<n>\d+)$")
MARKER_ID_PATTERN = re.compile(r"^visahoi-marker-(?P<ctx>.+)-(?P<n>\d+)$")


@dataclass(frozen=True)
class OnboardingMessage:
    id: str
    marker_id: str
    text: str
    title: str
    stage_id: str
    order: int
    tooltip_placement: str
    anchor: AnchorDirective | ResolvedAnchor
    marker_number: int | None = None


def message_id(context_key: str, index: int) -> str:
    return f"visahoi-message-{context_key}-{index}"


def marker_id(context_key: str, index: int) -> str:
    return f"visahoi-marker-{context_key}-{index}"


def expand_placeholders(template: str, extraction: ExtractionResult) -> str:
    def replace(match: re.Match) -> str:
        return extraction.features[match.group(1)].value

    return PLACEHOLDER.sub(replace, template)


def sort_messages(
    messages: list[OnboardingMessage], stages: list[OnboardingStage]
) -> list[OnboardingMessage]:
    stage_order = {s.id: s.order for s in stages}
    return sorted(messages, key=lambda m: (stage_order.get(m.stage_id, 0), m.order))


def generate_messages(
    extraction: ExtractionResult,
    templates: list[MessageTemplate],
    stages: list[OnboardingStage],
    context_key: str,
    registry: ContextRegistry | None = None,
) -> list[OnboardingMessage]:
    registry = registry or default_registry()
    stage_ids = {s.id for s in stages}
    for tpl in templates:
        if tpl.stage_id not in stage_ids:
            raise UnknownStage(
                f"template {tpl.template_id!r} references unknown stage {tpl.stage_id!r}"
            )

    out = []
    for index, tpl in enumerate(templates):
        if tpl.chart_types and extraction.chart_type not in tpl.chart_types:
            continue
        if not all(key in extraction.features for key in tpl.requires):
            continue
        anchor = extraction.features[tpl.anchor_feature].anchor
        if not directive_is_well_formed(anchor):
            continue
        out.append(
            OnboardingMessage(
                id=message_id(context_key, index),
                marker_id=marker_id(context_key, index),
                text=expand_placeholders(tpl.text_template, extraction),
                title=expand_placeholders(tpl.title_template, extraction),
                stage_id=tpl.stage_id,
                order=tpl.order,
                tooltip_placement=tpl.tooltip_placement,
                anchor=anchor,
            )
        )

    # Custom messages continue numbering after the catalog, even when some
    # catalog slots were filtered out.
    registry.reserve_indices(context_key, len(templates))
    messages = sort_messages(out, stages)
    state = registry.state(context_key)
    state.stages = list(stages)
    state.messages = list(messages)
    return messages


def create_basic_message(
    text: str,
    title: str,
    stage_id: str,
    anchor: AnchorDirective | ResolvedAnchor,
    order: int,
    context_key: str,
    stages: list[OnboardingStage],
    registry: ContextRegistry | None = None,
) -> OnboardingMessage:
    """Author one message directly; the text is taken verbatim (no
    placeholder expansion)."""
    registry = registry or default_registry()
    if not text or not text.strip():
        raise EmptyText("message text must be non-empty")
    if stage_id not in {s.id for s in stages}:
        raise UnknownStage(f"unknown stage {stage_id!r}")
    index = registry.take_index(context_key)
    message = OnboardingMessage(
        id=message_id(context_key, index),
        marker_id=marker_id(context_key, index),
        text=text,
        title=title,
        stage_id=stage_id,
        order=order,
        tooltip_placement="top",
        anchor=anchor,
    )
    registry.state(context_key).messages.append(message)
    return message
