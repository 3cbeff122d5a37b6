"""Message templates: placeholder texts bound to required features.

The built-in catalogs live as JSON data files next to this module so they
can be swapped without code changes; a catalog file passed on the command
line replaces them entirely.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from ..errors import MalformedTemplate
from ..features import is_valid_feature_key
from ..model import ChartType

PLACEHOLDER = re.compile(r"\{([a-zA-Z][a-zA-Z0-9.]*)\}")
TOOLTIP_PLACEMENTS = ("top", "bottom", "left", "right")


@dataclass(frozen=True)
class MessageTemplate:
    template_id: str
    chart_types: frozenset[ChartType]
    requires: tuple[str, ...]
    text_template: str
    title_template: str
    stage_id: str
    order: int
    tooltip_placement: str
    anchor_feature: str

    def __post_init__(self) -> None:
        if self.tooltip_placement not in TOOLTIP_PLACEMENTS:
            raise MalformedTemplate(
                f"template {self.template_id!r}: tooltipPlacement {self.tooltip_placement!r} "
                f"not in {TOOLTIP_PLACEMENTS}"
            )
        for key in self.requires:
            if not is_valid_feature_key(key):
                raise MalformedTemplate(
                    f"template {self.template_id!r}: unknown feature key {key!r} in requires"
                )
        if self.anchor_feature not in self.requires:
            raise MalformedTemplate(
                f"template {self.template_id!r}: anchorFeature {self.anchor_feature!r} "
                "missing from requires"
            )
        for source in (self.text_template, self.title_template):
            for placeholder in PLACEHOLDER.findall(source):
                if placeholder not in self.requires:
                    raise MalformedTemplate(
                        f"template {self.template_id!r}: placeholder {{{placeholder}}} "
                        "not covered by requires"
                    )


def template_from_dict(obj: dict) -> MessageTemplate:
    try:
        chart_types = frozenset(ChartType(name) for name in obj.get("chartTypes", []))
        return MessageTemplate(
            template_id=str(obj["templateId"]),
            chart_types=chart_types,
            requires=tuple(str(k) for k in obj["requires"]),
            text_template=str(obj["textTemplate"]),
            title_template=str(obj.get("titleTemplate", "")),
            stage_id=str(obj["stageId"]),
            order=int(obj["order"]),
            tooltip_placement=str(obj.get("tooltipPlacement", "top")),
            anchor_feature=str(obj["anchorFeature"]),
        )
    except MalformedTemplate:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedTemplate(f"bad template object {obj!r}: {exc}") from exc


def template_to_dict(tpl: MessageTemplate) -> dict:
    return {
        "templateId": tpl.template_id,
        "chartTypes": sorted(t.value for t in tpl.chart_types),
        "requires": list(tpl.requires),
        "textTemplate": tpl.text_template,
        "titleTemplate": tpl.title_template,
        "stageId": tpl.stage_id,
        "order": tpl.order,
        "tooltipPlacement": tpl.tooltip_placement,
        "anchorFeature": tpl.anchor_feature,
    }


def parse_catalog(text: str, chart_type: ChartType) -> list[MessageTemplate]:
    """Read a catalog file: either a bare array (applies to ``chart_type``)
    or an object keyed by chart type name holding one array each."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTemplate(f"catalog is not valid JSON: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get(chart_type.value, [])
    if not isinstance(obj, list):
        raise MalformedTemplate("catalog must be an array of template objects")
    return [template_from_dict(entry) for entry in obj]


def default_templates(chart_type: ChartType) -> list[MessageTemplate]:
    """Built-in catalog for one chart type; GENERIC has none by design."""
    if chart_type is ChartType.GENERIC:
        return []
    data = (
        resources.files("visahoi.core")
        .joinpath(f"data/templates/{chart_type.value}.json")
        .read_text(encoding="utf-8")
    )
    return parse_catalog(data, chart_type)
