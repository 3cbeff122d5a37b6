"""visahoi: compile declarative chart specs + rendered SVGs into
stage-organized onboarding bundles, annotated SVGs, and previews."""

from __future__ import annotations

from .adapters import parse_echarts, parse_plotly, parse_spec, parse_vega_lite
from .annotate import annotate_svg, strip_overlay
from .bundle import (
    SCHEMA_VERSION,
    ChartMeta,
    OnboardingBundle,
    parse_bundle,
    serialize_bundle,
    validate_bundle_text,
)
from .core import (
    ContextRegistry,
    MessageTemplate,
    NavSettings,
    OnboardingMessage,
    OnboardingStage,
    apply_customization,
    create_basic_message,
    default_stages,
    default_templates,
    generate_messages,
    parse_catalog,
    parse_patch,
    register_context,
)
from .features import (
    ExtractionResult,
    Extremum,
    Feature,
    compute_extrema,
    extract_features,
    format_value,
    interpolate_color,
)
from .model import (
    AxisInfo,
    AxisKind,
    ChartModel,
    ChartType,
    ColorScale,
    DataTable,
    Grammar,
    Rgb,
    chart_type_from_name,
    detect_chart_type,
)
from .pipeline import annotate_bundle, generate_bundle, preview_bundle, resolve_bundle_anchors
from .preview import emit_preview_html
from .svg import (
    Coords,
    FindByValue,
    MarkExtremum,
    ResolvedAnchor,
    Selector,
    Unresolved,
    bounding_box,
    find_by_text,
    parse_svg,
    query_selector,
    resolve_anchor,
    select_extremum,
)

__version__ = "0.1.0"
