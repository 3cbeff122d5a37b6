"""Self-contained HTML preview: inline SVG, embedded bundle, message list."""

from __future__ import annotations

import html

from .bundle import OnboardingBundle, bundle_to_dict, serialize_bundle
from .core.messages import sort_messages

_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
body {{ font-family: sans-serif; margin: 2rem; color: #222; }}
.chart {{ border: 1px solid #ddd; display: inline-block; }}
.stage h2 {{ border-bottom: 2px solid var(--stage-color, #888); padding-bottom: .2rem; }}
.message {{ margin: .5rem 0; }}
.marker-no {{ display: inline-block; min-width: 1.6em; text-align: center;
  border-radius: 50%; color: #fff; background: var(--stage-color, #888); margin-right: .5em; }}
.empty {{ color: #777; font-style: italic; }}
</style>
</head>
<body>
<h1>{title}</h1>
<div class="chart">
{svg}
</div>
{stages}
<script id="visahoi-bundle" type="application/json">
{bundle_json}</script>
</body>
</html>
"""


def emit_preview_html(bundle: OnboardingBundle, annotated_svg_text: str) -> str:
    stages = sorted(bundle.stages, key=lambda s: s.order)
    messages = sort_messages(list(bundle.messages), stages)

    sections: list[str] = []
    if not messages:
        sections.append('<p class="empty">no onboarding available</p>')
    else:
        position_of = {m.id: i + 1 for i, m in enumerate(messages)}
        for stage in stages:
            own = [m for m in messages if m.stage_id == stage.id]
            if not own:
                continue
            items = []
            for message in own:
                number = message.marker_number if message.marker_number is not None else position_of[message.id]
                label = f"<strong>{html.escape(message.title)}</strong> " if message.title else ""
                # Message text may carry authored inline HTML (<i>, <b>).
                items.append(
                    f'<p class="message"><span class="marker-no">{number}</span>'
                    f"{label}{message.text}</p>"
                )
            sections.append(
                f'<section class="stage" style="--stage-color: {html.escape(stage.color)}">'
                f"<h2>{html.escape(stage.title)}</h2>" + "".join(items) + "</section>"
            )

    # "</" would terminate the script block early; JSON allows the escape.
    bundle_json = serialize_bundle(bundle).replace("</", "<\\/")
    title = bundle_to_dict(bundle)["chart"]["chartType"] + " onboarding preview"
    return _PAGE.format(
        title=html.escape(title),
        svg=annotated_svg_text,
        stages="\n".join(sections),
        bundle_json=bundle_json,
    )
