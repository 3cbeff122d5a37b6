/** Anchor resolution against the live SVG DOM.
 *
 * Deliberately mirrors the headless compiler: attribute-based geometry
 * with folded translate() transforms, a bounded selector subset, deepest
 * text match, and extremum selection — so markers land on the same
 * coordinates the bundle generator would compute. Lookup misses return
 * null (the marker is hidden), never a wrong position. */

import { Anchor, ExtremumMeasure } from "./types.js";

const TEXT_WIDTH_FACTOR = 0.6;
const TEXT_HEIGHT_FACTOR = 1.2;
const DEFAULT_FONT_SIZE = 16;

const COMPOUND = /^([a-zA-Z][a-zA-Z0-9_-]*)?((?:[.#][a-zA-Z_][a-zA-Z0-9_-]*)*)$/;

export interface Point {
  x: number;
  y: number;
}

interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function isValidSelector(sel: string): boolean {
  const tokens = sel.trim().split(/\s+/);
  if (tokens.length === 0 || tokens[0] === "") return false;
  return tokens.every((token) => {
    const m = COMPOUND.exec(token);
    return m !== null && (m[1] !== undefined || (m[2] ?? "") !== "");
  });
}

function floatAttr(el: Element, name: string): number | null {
  const raw = el.getAttribute(name);
  if (raw === null) return null;
  const value = parseFloat(raw);
  return Number.isFinite(value) ? value : null;
}

/** Sum of translate() offsets on self and ancestors; null when any
 * non-translate transform taints the chain. */
function cumulativeTranslate(el: Element, root: Element): Point | null {
  let dx = 0;
  let dy = 0;
  let node: Element | null = el;
  while (node !== null) {
    const transform = node.getAttribute("transform");
    if (transform) {
      for (const [, fn, args] of transform.matchAll(/([a-zA-Z]+)\s*\(([^)]*)\)/g)) {
        const numbers = (args ?? "").match(/[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?/g) ?? [];
        if (fn === "translate" && numbers.length > 0) {
          dx += parseFloat(numbers[0]!);
          dy += numbers.length > 1 ? parseFloat(numbers[1]!) : 0;
        } else {
          return null;
        }
      }
    }
    if (node === root) break;
    node = node.parentElement;
  }
  return { x: dx, y: dy };
}

function inherited(el: Element, root: Element, name: string): string | null {
  let node: Element | null = el;
  while (node !== null) {
    const direct = node.getAttribute(name);
    if (direct !== null) return direct;
    const style = node.getAttribute("style");
    if (style) {
      for (const part of style.split(";")) {
        const [key, value] = part.split(":", 2);
        if (key?.trim() === name && value?.trim()) return value.trim();
      }
    }
    if (node === root) break;
    node = node.parentElement;
  }
  return null;
}

function boundingBox(el: Element, root: Element): Box | null {
  const translate = cumulativeTranslate(el, root);
  if (translate === null) return null;
  const tag = el.localName;
  if (tag === "rect") {
    return {
      x: (floatAttr(el, "x") ?? 0) + translate.x,
      y: (floatAttr(el, "y") ?? 0) + translate.y,
      w: floatAttr(el, "width") ?? 0,
      h: floatAttr(el, "height") ?? 0,
    };
  }
  if (tag === "circle") {
    const r = floatAttr(el, "r") ?? 0;
    const cx = (floatAttr(el, "cx") ?? 0) + translate.x;
    const cy = (floatAttr(el, "cy") ?? 0) + translate.y;
    return { x: cx - r, y: cy - r, w: 2 * r, h: 2 * r };
  }
  if (tag === "text") {
    const rawSize = inherited(el, root, "font-size");
    const size = rawSize ? parseFloat(rawSize) || DEFAULT_FONT_SIZE : DEFAULT_FONT_SIZE;
    const content = (el.textContent ?? "").trim();
    const width = TEXT_WIDTH_FACTOR * size * [...content].length;
    const height = TEXT_HEIGHT_FACTOR * size;
    let x = (floatAttr(el, "x") ?? 0) + translate.x;
    const y = (floatAttr(el, "y") ?? 0) + translate.y;
    const anchor = (inherited(el, root, "text-anchor") ?? "start").trim();
    if (anchor === "middle") x -= width / 2;
    else if (anchor === "end") x -= width;
    return { x, y: y - size, w: width, h: height };
  }
  if (tag === "g") {
    let union: Box | null = null;
    for (const child of Array.from(el.children)) {
      const box = boundingBox(child, root);
      if (box === null) continue;
      if (union === null) {
        union = { ...box };
      } else {
        const x0 = Math.min(union.x, box.x);
        const y0 = Math.min(union.y, box.y);
        const x1 = Math.max(union.x + union.w, box.x + box.w);
        const y1 = Math.max(union.y + union.h, box.y + box.h);
        union = { x: x0, y: y0, w: x1 - x0, h: y1 - y0 };
      }
    }
    return union;
  }
  if (tag === "path") {
    const explicit = el.getAttribute("data-bbox");
    if (explicit) {
      const parts = explicit.match(/[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?/g) ?? [];
      if (parts.length === 4) {
        return {
          x: parseFloat(parts[0]!) + translate.x,
          y: parseFloat(parts[1]!) + translate.y,
          w: parseFloat(parts[2]!),
          h: parseFloat(parts[3]!),
        };
      }
    }
    return null;
  }
  return null;
}

function documentOrder(root: Element): Element[] {
  const out: Element[] = [];
  const visit = (el: Element) => {
    out.push(el);
    for (const child of Array.from(el.children)) visit(child);
  };
  visit(root);
  return out;
}

function findByText(root: Element, value: string): Element | null {
  if (!value) return null;
  const matches = documentOrder(root).filter((el) => (el.textContent ?? "").trim() === value);
  const matched = new Set(matches);
  for (const el of matches) {
    let deeperMatch = false;
    for (const descendant of documentOrder(el).slice(1)) {
      if (matched.has(descendant)) {
        deeperMatch = true;
        break;
      }
    }
    if (!deeperMatch) return el;
  }
  return null;
}

function measure(el: Element, root: Element, kind: ExtremumMeasure): number | null {
  if (kind === "cx" || kind === "cy") {
    const raw = floatAttr(el, kind);
    if (raw === null) return null;
    const translate = cumulativeTranslate(el, root);
    if (translate === null) return null;
    return raw + (kind === "cx" ? translate.x : translate.y);
  }
  if (kind === "rectHeight") return floatAttr(el, "height");
  const w = floatAttr(el, "width");
  const h = floatAttr(el, "height");
  return w === null || h === null ? null : w * h;
}

function selectExtremum(
  root: Element,
  sel: string,
  kind: ExtremumMeasure,
  direction: "min" | "max",
): Element | null {
  let best: Element | null = null;
  let bestValue = 0;
  for (const el of Array.from(root.querySelectorAll(sel))) {
    const value = measure(el, root, kind);
    if (value === null) continue;
    if (
      best === null ||
      (direction === "max" && value > bestValue) ||
      (direction === "min" && value < bestValue)
    ) {
      best = el;
      bestValue = value;
    }
  }
  return best;
}

export function resolveAnchor(
  svgRoot: SVGSVGElement,
  anchor: Anchor,
  width: number,
  height: number,
): Point | null {
  const clamp = (p: Point): Point => ({
    x: Math.min(Math.max(p.x, 0), width),
    y: Math.min(Math.max(p.y, 0), height),
  });

  switch (anchor.kind) {
    case "resolved":
      return clamp({ x: anchor.x, y: anchor.y });
    case "coords":
      return clamp({ x: anchor.x, y: anchor.y });
    case "selector": {
      if (!isValidSelector(anchor.sel)) return null;
      const el = svgRoot.querySelector(anchor.sel);
      if (el === null) return null;
      const box = boundingBox(el, svgRoot);
      return box === null ? null : clamp({ x: box.x + box.w / 2, y: box.y + box.h / 2 });
    }
    case "findByValue": {
      const el = findByText(svgRoot, anchor.value);
      if (el === null) return null;
      const box = boundingBox(el, svgRoot);
      if (box === null) return null;
      return clamp({ x: box.x + anchor.offset.left, y: box.y + anchor.offset.top });
    }
    case "markExtremum": {
      if (!isValidSelector(anchor.sel)) return null;
      const el = selectExtremum(svgRoot, anchor.sel, anchor.measure, anchor.direction);
      if (el === null) return null;
      const box = boundingBox(el, svgRoot);
      return box === null ? null : clamp({ x: box.x + box.w / 2, y: box.y + box.h / 2 });
    }
  }
}
