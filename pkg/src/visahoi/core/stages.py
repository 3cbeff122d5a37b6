"""Onboarding stages and their built-in defaults."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OnboardingStage:
    id: str
    title: str
    icon_name: str
    color: str
    order: int


READING_STAGE_ID = "reading"
INTERACTING_STAGE_ID = "interacting"
ANALYZING_STAGE_ID = "analyzing"


def default_stages() -> list[OnboardingStage]:
    """The three standard stages; colors and icons are placeholders that a
    customization patch can override."""
    return [
        OnboardingStage(id=READING_STAGE_ID, title="Reading the chart", icon_name="book", color="#7B61FF", order=1),
        OnboardingStage(id=INTERACTING_STAGE_ID, title="Interacting with the chart", icon_name="cursor", color="#FF9800", order=2),
        OnboardingStage(id=ANALYZING_STAGE_ID, title="Analyzing the chart", icon_name="chart", color="#4CAF50", order=3),
    ]
