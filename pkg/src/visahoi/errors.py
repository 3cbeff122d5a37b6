"""Typed errors raised across the pipeline.

Every parse or lookup failure surfaces as one of these; lookup *misses*
during anchor resolution are signalled with ``Unresolved`` values instead
(see :mod:`visahoi.svg.anchor`), never as exceptions.
"""

from __future__ import annotations


class VisahoiError(Exception):
    """Base class for all library errors."""


class MalformedSpec(VisahoiError):
    """Input chart spec is not valid JSON or misses required structure."""


class UnsupportedMark(MalformedSpec):
    """Vega-Lite mark outside the supported set."""


class UnsupportedSeriesType(MalformedSpec):
    """ECharts series type outside the supported set."""


class UnsupportedTraceType(MalformedSpec):
    """Plotly trace type outside the supported set."""


class EmptySeries(VisahoiError):
    """Extrema requested over an empty sequence."""


class MalformedSvg(VisahoiError):
    """SVG input is not well-formed XML or has no ``svg`` root."""


class MissingDimensions(MalformedSvg):
    """SVG has neither usable width/height attributes nor a viewBox."""


class InvalidSelector(VisahoiError):
    """Selector text falls outside the supported subset grammar."""


class UnsupportedElement(VisahoiError):
    """No bounding box rule exists for this element."""


class UnknownStage(VisahoiError):
    """A template or message references a stage id that does not exist."""


class EmptyText(VisahoiError):
    """A message was created with empty text."""


class MalformedTemplate(VisahoiError):
    """Template catalog entry is structurally invalid (bad placeholder,
    anchor feature not in requires, unknown field values)."""


class MalformedPatch(VisahoiError):
    """Customization patch file is not a JSON array of tagged operations."""


class MalformedBundle(VisahoiError):
    """Bundle JSON misses required structure."""


class SchemaVersionMismatch(MalformedBundle):
    """Bundle carries a schemaVersion other than the supported one."""


class DanglingStageRef(MalformedBundle):
    """A bundle message references a stage not present in the bundle."""
