"""Command line front door.

Exit codes: 0 success, 1 input or parse error, 2 strict-mode unresolved
anchors, 3 internal error. Output files are written atomically and only on
success.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import tempfile
from pathlib import Path

from .bundle import parse_bundle, serialize_bundle, validate_bundle_text
from .core.customize import apply_customization, parse_patch
from .core.templates import parse_catalog
from .errors import VisahoiError
from .model import Grammar, chart_type_from_name
from .pipeline import annotate_bundle, generate_bundle, preview_bundle

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_STRICT_UNRESOLVED = 2
EXIT_INTERNAL = 3

TEMPLATES_ENV_VAR = "VISAHOI_TEMPLATES"


class _Emitter:
    def __init__(self, log_format: str) -> None:
        self.log_format = log_format

    def warn(self, code: str, message: str) -> None:
        if self.log_format == "json":
            print(json.dumps({"level": "warn", "code": code, "message": message}), file=sys.stderr)
        else:
            print(f"WARN {code}: {message}", file=sys.stderr)

    def error(self, message: str) -> None:
        if self.log_format == "json":
            print(json.dumps({"level": "error", "message": message}), file=sys.stderr)
        else:
            print(f"ERROR: {message}", file=sys.stderr)


def _write_atomic(path: str, content: str) -> None:
    dest = Path(path)
    fd, tmp = tempfile.mkstemp(dir=dest.parent or Path("."), prefix=dest.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
        os.replace(tmp, dest)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit_warnings(emitter: _Emitter, warnings) -> None:
    for record in warnings:
        emitter.warn(record.code, record.message)


def _cmd_generate(args: argparse.Namespace, emitter: _Emitter) -> int:
    grammar = Grammar(args.grammar)
    chart_type = chart_type_from_name(args.type)

    spec_text = _read_text(args.spec)
    svg_text = _read_text(args.svg) if args.svg else None

    templates = None
    templates_path = args.templates or os.environ.get(TEMPLATES_ENV_VAR)
    if templates_path:
        templates = parse_catalog(_read_text(templates_path), chart_type)

    patch = parse_patch(_read_text(args.patch)) if args.patch else None

    result = generate_bundle(
        grammar=grammar,
        spec_text=spec_text,
        explicit_type=chart_type,
        svg_text=svg_text,
        context_key=args.context_key,
        templates=templates,
        patch=patch,
    )
    _emit_warnings(emitter, result.warnings)
    for entry in result.patch_report:
        emitter.warn("patch-unknown-id", entry)
    if args.strict and result.dropped_messages > 0:
        emitter.error(f"{result.dropped_messages} message(s) dropped for unresolved anchors")
        return EXIT_STRICT_UNRESOLVED
    _write_atomic(args.output, serialize_bundle(result.bundle))
    return EXIT_OK


def _cmd_annotate(args: argparse.Namespace, emitter: _Emitter) -> int:
    bundle = parse_bundle(_read_text(args.bundle))
    svg_text = _read_text(args.svg)
    annotated, warnings = annotate_bundle(bundle, svg_text)
    _emit_warnings(emitter, warnings)
    _write_atomic(args.output, annotated)
    return EXIT_OK


def _cmd_patch(args: argparse.Namespace, emitter: _Emitter) -> int:
    bundle = parse_bundle(_read_text(args.bundle))
    patch = parse_patch(_read_text(args.patch))
    outcome = apply_customization(
        list(bundle.messages), list(bundle.stages), patch, bundle.nav, bundle.marker_numbers
    )
    for entry in outcome.report:
        emitter.warn("patch-unknown-id", entry)
    patched = dataclasses.replace(
        bundle,
        messages=tuple(outcome.messages),
        stages=tuple(outcome.stages),
        nav=outcome.nav,
        marker_numbers=outcome.marker_numbers,
    )
    _write_atomic(args.output, serialize_bundle(patched))
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace, emitter: _Emitter) -> int:
    violations = validate_bundle_text(_read_text(args.bundle))
    for violation in violations:
        print(f"violation: {violation}")
    if violations:
        return EXIT_INPUT_ERROR
    print("bundle is valid")
    return EXIT_OK


def _cmd_preview(args: argparse.Namespace, emitter: _Emitter) -> int:
    bundle = parse_bundle(_read_text(args.bundle))
    svg_text = _read_text(args.svg)
    page, warnings = preview_bundle(bundle, svg_text)
    _emit_warnings(emitter, warnings)
    _write_atomic(args.output, page)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="visahoi",
        description="Compile chart specs into onboarding bundles, annotated SVGs, and previews.",
    )
    parser.add_argument(
        "--log-format", choices=("text", "json"), default="text", help="warning/error format on stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="spec (+ optional SVG) -> bundle")
    generate.add_argument("--grammar", required=True, choices=[g.value for g in Grammar])
    generate.add_argument("--spec", required=True, help="chart spec JSON file")
    generate.add_argument("--type", required=True, help="chart type (e.g. scatterplot, horizon)")
    generate.add_argument("--svg", help="rendered chart SVG; enables anchor resolution")
    generate.add_argument("--context-key", help="stable context key for deterministic ids")
    generate.add_argument("--patch", help="customization patch JSON file")
    generate.add_argument("--templates", help=f"template catalog file (default ${TEMPLATES_ENV_VAR})")
    generate.add_argument("--strict", action="store_true", help="fail when any message is dropped")
    generate.add_argument("-o", "--output", required=True, help="bundle output path")
    generate.set_defaults(handler=_cmd_generate)

    annotate = sub.add_parser("annotate", help="bundle + SVG -> annotated SVG")
    annotate.add_argument("--bundle", required=True)
    annotate.add_argument("--svg", required=True)
    annotate.add_argument("-o", "--output", required=True)
    annotate.set_defaults(handler=_cmd_annotate)

    patch = sub.add_parser("patch", help="apply a customization patch to a bundle")
    patch.add_argument("--bundle", required=True)
    patch.add_argument("--patch", required=True)
    patch.add_argument("-o", "--output", required=True)
    patch.set_defaults(handler=_cmd_patch)

    validate = sub.add_parser("validate", help="check bundle invariants")
    validate.add_argument("--bundle", required=True)
    validate.set_defaults(handler=_cmd_validate)

    preview = sub.add_parser("preview", help="bundle + SVG -> offline HTML preview")
    preview.add_argument("--bundle", required=True)
    preview.add_argument("--svg", required=True)
    preview.add_argument("-o", "--output", required=True)
    preview.set_defaults(handler=_cmd_preview)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    emitter = _Emitter(args.log_format)
    try:
        return args.handler(args, emitter)
    except (VisahoiError, OSError, ValueError) as exc:
        emitter.error(str(exc))
        return EXIT_INPUT_ERROR
    except Exception as exc:  # pragma: no cover - defensive
        emitter.error(f"internal error: {exc!r}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
