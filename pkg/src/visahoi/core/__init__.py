"""Message catalog, generation, customization, and context state."""

from __future__ import annotations

from .context import ContextRegistry, default_registry, register_context
from .customize import CustomizeResult, NavSettings, apply_customization, parse_patch
from .messages import (
    OnboardingMessage,
    create_basic_message,
    expand_placeholders,
    generate_messages,
    sort_messages,
)
from .stages import OnboardingStage, default_stages
from .templates import MessageTemplate, default_templates, parse_catalog, template_from_dict

__all__ = [
    "ContextRegistry",
    "CustomizeResult",
    "MessageTemplate",
    "NavSettings",
    "OnboardingMessage",
    "OnboardingStage",
    "apply_customization",
    "create_basic_message",
    "default_registry",
    "default_stages",
    "default_templates",
    "expand_placeholders",
    "generate_messages",
    "parse_catalog",
    "parse_patch",
    "register_context",
    "sort_messages",
    "template_from_dict",
]
