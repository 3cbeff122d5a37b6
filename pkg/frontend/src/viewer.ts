/** Interactive onboarding viewer/editor.
 *
 * Renders the chart SVG with a transparent overlay (markers and tooltips
 * are the only interactive islands), a floating action button that
 * expands into stage buttons, a stepper for guided traversal, draggable
 * tooltips, and an inline edit mode whose changes accumulate into a
 * customization patch. Exported bundles are byte-compatible with the CLI
 * `patch` output for the same operations. */

import { serializeBundle } from "./canonical.js";
import { applyPatch, PatchOp } from "./patch.js";
import { Point, resolveAnchor } from "./resolve.js";
import {
  Bundle,
  Message,
  markerNumberOf,
  sortedMessages,
  sortedStages,
  validateBundle,
} from "./types.js";

const MARKER_RADIUS = 12;
const TOOLTIP_WIDTH = 220;
const TOOLTIP_HEIGHT = 96;
const TOOLTIP_GAP = 18;

export interface ViewerState {
  bundle: Bundle;
  activeStageId: string | null;
  activeMessageId: string | null;
  fabExpanded: boolean;
  editMode: boolean;
  tooltipOffsets: Map<string, { dx: number; dy: number }>;
}

export class Viewer {
  readonly container: HTMLElement;
  state: ViewerState | null = null;
  /** Operations accumulated since load; replaying them on the loaded
   * bundle reproduces the on-screen bundle exactly. */
  session: PatchOp[] = [];
  original: Bundle | null = null;

  private chartBox: HTMLElement | null = null;
  private svgRoot: SVGSVGElement | null = null;
  private overlay: HTMLElement | null = null;
  private navBox: HTMLElement | null = null;
  private fab: HTMLButtonElement | null = null;
  private stageButtons: HTMLElement | null = null;
  private stepper: HTMLElement | null = null;
  private tooltip: HTMLElement | null = null;
  private positions = new Map<string, Point>();
  private width = 0;
  private height = 0;

  constructor(container: HTMLElement) {
    this.container = container;
  }

  load(bundleValue: unknown, svgText: string): void {
    this.container.innerHTML = "";
    this.state = null;
    this.session = [];
    let bundle: Bundle;
    try {
      bundle = validateBundle(bundleValue);
    } catch (error) {
      this.renderError(`Invalid bundle: ${(error as Error).message}`);
      throw error;
    }

    const chartBox = document.createElement("div");
    chartBox.className = "visahoi-chart";
    chartBox.style.position = "relative";
    chartBox.innerHTML = svgText;
    const svgRoot = chartBox.querySelector("svg");
    if (svgRoot === null) {
      this.renderError("Invalid SVG: no <svg> root element");
      throw new Error("invalid svg");
    }

    this.original = structuredClone(bundle);
    this.state = {
      bundle: structuredClone(bundle),
      activeStageId: null,
      activeMessageId: null,
      fabExpanded: false,
      editMode: false,
      tooltipOffsets: new Map(),
    };
    this.chartBox = chartBox;
    this.svgRoot = svgRoot as SVGSVGElement;
    this.width = bundle.chart.width;
    this.height = bundle.chart.height;
    chartBox.style.width = `${this.width}px`;
    chartBox.style.height = `${this.height}px`;

    // Overlay above the chart; transparent to pointer events so the host
    // visualization stays fully interactive while onboarding is open.
    const overlay = document.createElement("div");
    overlay.className = "visahoi-overlay-layer";
    overlay.style.position = "absolute";
    overlay.style.left = "0";
    overlay.style.top = "0";
    overlay.style.width = `${this.width}px`;
    overlay.style.height = `${this.height}px`;
    overlay.style.pointerEvents = "none";
    chartBox.appendChild(overlay);
    this.overlay = overlay;

    const navBox = document.createElement("div");
    navBox.className = "visahoi-nav";
    navBox.style.position = "absolute";
    navBox.style.right = "16px";
    navBox.style.bottom = "16px";
    navBox.style.pointerEvents = "auto";
    overlay.appendChild(navBox);
    this.navBox = navBox;

    this.container.appendChild(chartBox);
    this.resolvePositions();
    this.renderMarkers();
    this.renderNav();
    this.renderTooltipShell();
  }

  private renderError(message: string): void {
    const error = document.createElement("div");
    error.className = "visahoi-error";
    error.textContent = message;
    this.container.appendChild(error);
  }

  private requireState(): ViewerState {
    if (this.state === null) throw new Error("viewer not loaded");
    return this.state;
  }

  private resolvePositions(): void {
    const state = this.requireState();
    this.positions.clear();
    if (this.svgRoot === null) return;
    for (const message of state.bundle.messages) {
      const point = resolveAnchor(this.svgRoot, message.anchor, this.width, this.height);
      if (point !== null) {
        this.positions.set(message.id, point);
      }
    }
  }

  // ----- markers ---------------------------------------------------------

  private renderMarkers(): void {
    const state = this.requireState();
    if (this.overlay === null) return;
    for (const stale of Array.from(this.overlay.querySelectorAll(".visahoi-marker"))) {
      stale.remove();
    }
    const stageColor = new Map(state.bundle.stages.map((s) => [s.id, s.color]));
    for (const message of sortedMessages(state.bundle)) {
      const point = this.positions.get(message.id);
      if (point === undefined) continue;
      const marker = document.createElement("button");
      marker.className = "visahoi-marker";
      marker.id = message.markerId;
      marker.dataset.messageId = message.id;
      marker.dataset.stageId = message.stageId;
      marker.style.position = "absolute";
      marker.style.left = `${point.x - MARKER_RADIUS}px`;
      marker.style.top = `${point.y - MARKER_RADIUS}px`;
      marker.style.width = `${2 * MARKER_RADIUS}px`;
      marker.style.height = `${2 * MARKER_RADIUS}px`;
      marker.style.borderRadius = "50%";
      marker.style.border = "none";
      marker.style.opacity = "0.85";
      marker.style.color = "#ffffff";
      marker.style.background = stageColor.get(message.stageId) ?? "#888888";
      marker.style.pointerEvents = "auto";
      marker.style.display = "none";
      if (state.bundle.markerNumbers) {
        marker.textContent = String(markerNumberOf(state.bundle, message.id) ?? "");
      }
      marker.addEventListener("click", () => this.openMarker(message.id));
      this.overlay.appendChild(marker);
    }
    this.syncMarkerVisibility();
  }

  private syncMarkerVisibility(): void {
    const state = this.requireState();
    if (this.overlay === null) return;
    for (const el of Array.from(this.overlay.querySelectorAll<HTMLElement>(".visahoi-marker"))) {
      el.style.display = el.dataset.stageId === state.activeStageId ? "block" : "none";
    }
  }

  // ----- navigation ------------------------------------------------------

  private renderNav(): void {
    const state = this.requireState();
    if (this.navBox === null) return;
    this.navBox.innerHTML = "";

    const stepper = document.createElement("div");
    stepper.className = "visahoi-stepper";
    stepper.style.display = "none";
    const prev = document.createElement("button");
    prev.className = "visahoi-step-prev";
    prev.textContent = "↑";
    prev.addEventListener("click", () => this.step("prev"));
    const label = document.createElement("span");
    label.className = "visahoi-step-label";
    const next = document.createElement("button");
    next.className = "visahoi-step-next";
    next.textContent = "↓";
    next.addEventListener("click", () => this.step("next"));
    stepper.append(prev, label, next);
    this.stepper = stepper;

    const stageButtons = document.createElement("div");
    stageButtons.className = "visahoi-stage-buttons";
    stageButtons.style.display = "none";
    // vertical navigation unfolds upwards, horizontal unfolds to the left
    stageButtons.style.flexDirection =
      state.bundle.nav.alignment === "horizontal" ? "row-reverse" : "column-reverse";
    for (const stage of sortedStages(state.bundle)) {
      const button = document.createElement("button");
      button.className = "visahoi-stage-button";
      button.dataset.stageId = stage.id;
      button.title = stage.title;
      button.textContent = stage.title;
      button.style.background = stage.color;
      button.addEventListener("click", () => this.selectStage(stage.id));
      if (state.editMode) {
        const remove = document.createElement("span");
        remove.className = "visahoi-stage-delete";
        remove.textContent = "×";
        remove.addEventListener("click", (event) => {
          event.stopPropagation();
          this.deleteStage(stage.id);
        });
        button.appendChild(remove);
      }
      stageButtons.appendChild(button);
    }
    this.stageButtons = stageButtons;

    const fab = document.createElement("button");
    fab.className = "visahoi-fab";
    fab.textContent = "?";
    fab.addEventListener("click", () => this.toggleFab());
    this.fab = fab;

    this.navBox.append(stepper, stageButtons, fab);
    this.syncNav();
  }

  private syncNav(): void {
    const state = this.requireState();
    if (this.stageButtons !== null) {
      this.stageButtons.style.display = state.fabExpanded ? "flex" : "none";
    }
    if (this.stepper !== null) {
      const show = state.activeStageId !== null && state.bundle.nav.showStepper;
      this.stepper.style.display = show ? "flex" : "none";
      const label = this.stepper.querySelector(".visahoi-step-label");
      if (label !== null) {
        const ordered = sortedMessages(state.bundle);
        if (state.activeMessageId !== null) {
          const index = ordered.findIndex((m) => m.id === state.activeMessageId);
          label.textContent = `${index + 1}/${ordered.length}`;
        } else {
          label.textContent = `${ordered.length}`;
        }
      }
    }
  }

  toggleFab(): void {
    const state = this.requireState();
    state.fabExpanded = !state.fabExpanded;
    if (!state.fabExpanded) {
      state.activeStageId = null;
      state.activeMessageId = null;
      this.closeTooltip();
      this.syncMarkerVisibility();
    }
    this.syncNav();
  }

  selectStage(stageId: string): void {
    const state = this.requireState();
    if (!state.bundle.stages.some((s) => s.id === stageId)) return;
    state.activeStageId = stageId;
    state.activeMessageId = null;
    this.closeTooltip();
    this.syncMarkerVisibility();
    this.syncNav();
  }

  step(direction: "next" | "prev"): void {
    const state = this.requireState();
    const ordered = sortedMessages(state.bundle).filter((m) => this.positions.has(m.id));
    if (ordered.length === 0) return;
    let index: number;
    if (state.activeMessageId === null) {
      // start at the active stage's first message, or the very first
      const start = ordered.findIndex((m) => m.stageId === state.activeStageId);
      index = start >= 0 ? start : 0;
    } else {
      const current = ordered.findIndex((m) => m.id === state.activeMessageId);
      const delta = direction === "next" ? 1 : -1;
      index = (current + delta + ordered.length) % ordered.length;
    }
    this.openMarker(ordered[index]!.id);
  }

  openMarker(messageId: string): void {
    const state = this.requireState();
    const message = state.bundle.messages.find((m) => m.id === messageId);
    if (message === undefined) return;
    state.activeMessageId = messageId;
    if (state.activeStageId !== message.stageId) {
      state.activeStageId = message.stageId;
      this.syncMarkerVisibility();
    }
    this.renderTooltip(message);
    this.syncNav();
  }

  dragTooltip(messageId: string, dx: number, dy: number): void {
    const state = this.requireState();
    const previous = state.tooltipOffsets.get(messageId) ?? { dx: 0, dy: 0 };
    state.tooltipOffsets.set(messageId, { dx: previous.dx + dx, dy: previous.dy + dy });
    if (state.activeMessageId === messageId) {
      const message = state.bundle.messages.find((m) => m.id === messageId);
      if (message !== undefined) this.renderTooltip(message);
    }
  }

  // ----- tooltip ---------------------------------------------------------

  private renderTooltipShell(): void {
    if (this.overlay === null) return;
    const tooltip = document.createElement("div");
    tooltip.className = "visahoi-tooltip";
    tooltip.style.position = "absolute";
    tooltip.style.width = `${TOOLTIP_WIDTH}px`;
    tooltip.style.minHeight = `${TOOLTIP_HEIGHT}px`;
    tooltip.style.pointerEvents = "auto";
    tooltip.style.display = "none";
    this.overlay.appendChild(tooltip);
    this.tooltip = tooltip;
  }

  /** Preferred placement relative to the marker, flipped when it would
   * overflow the chart, then clamped. Drag offsets apply afterwards. */
  private tooltipPosition(message: Message, point: Point): Point {
    let placement = message.tooltipPlacement;
    if (placement === "top" && point.y - TOOLTIP_GAP - TOOLTIP_HEIGHT < 0) placement = "bottom";
    else if (placement === "bottom" && point.y + TOOLTIP_GAP + TOOLTIP_HEIGHT > this.height)
      placement = "top";
    else if (placement === "left" && point.x - TOOLTIP_GAP - TOOLTIP_WIDTH < 0) placement = "right";
    else if (placement === "right" && point.x + TOOLTIP_GAP + TOOLTIP_WIDTH > this.width)
      placement = "left";

    let x: number;
    let y: number;
    switch (placement) {
      case "top":
        x = point.x - TOOLTIP_WIDTH / 2;
        y = point.y - TOOLTIP_GAP - TOOLTIP_HEIGHT;
        break;
      case "bottom":
        x = point.x - TOOLTIP_WIDTH / 2;
        y = point.y + TOOLTIP_GAP;
        break;
      case "left":
        x = point.x - TOOLTIP_GAP - TOOLTIP_WIDTH;
        y = point.y - TOOLTIP_HEIGHT / 2;
        break;
      case "right":
        x = point.x + TOOLTIP_GAP;
        y = point.y - TOOLTIP_HEIGHT / 2;
        break;
    }
    x = Math.min(Math.max(x, 0), Math.max(this.width - TOOLTIP_WIDTH, 0));
    y = Math.min(Math.max(y, 0), Math.max(this.height - TOOLTIP_HEIGHT, 0));
    const offset = this.requireState().tooltipOffsets.get(message.id) ?? { dx: 0, dy: 0 };
    return { x: x + offset.dx, y: y + offset.dy };
  }

  private renderTooltip(message: Message): void {
    const state = this.requireState();
    if (this.tooltip === null) return;
    const point = this.positions.get(message.id);
    if (point === undefined) return;
    const position = this.tooltipPosition(message, point);
    this.tooltip.style.left = `${position.x}px`;
    this.tooltip.style.top = `${position.y}px`;
    this.tooltip.style.display = "block";
    this.tooltip.innerHTML = "";

    const header = document.createElement("div");
    header.className = "visahoi-tooltip-header";
    const title = document.createElement("strong");
    title.className = "visahoi-tooltip-title";
    title.textContent = message.title;
    const close = document.createElement("button");
    close.className = "visahoi-tooltip-close";
    close.textContent = "×";
    close.addEventListener("click", () => this.closeTooltip());
    header.append(title, close);
    this.attachDrag(header, message.id);

    const text = document.createElement("div");
    text.className = "visahoi-tooltip-text";
    text.innerHTML = message.text; // authored content may carry <i>/<b>

    this.tooltip.append(header, text);

    if (state.editMode) {
      this.tooltip.appendChild(this.buildEditControls(message));
    }
  }

  private attachDrag(handle: HTMLElement, messageId: string): void {
    handle.addEventListener("mousedown", (down: MouseEvent) => {
      let lastX = down.clientX;
      let lastY = down.clientY;
      const move = (event: MouseEvent) => {
        this.dragTooltip(messageId, event.clientX - lastX, event.clientY - lastY);
        lastX = event.clientX;
        lastY = event.clientY;
      };
      const up = () => {
        document.removeEventListener("mousemove", move);
        document.removeEventListener("mouseup", up);
      };
      document.addEventListener("mousemove", move);
      document.addEventListener("mouseup", up);
    });
  }

  private buildEditControls(message: Message): HTMLElement {
    const box = document.createElement("div");
    box.className = "visahoi-edit-controls";

    const titleInput = document.createElement("input");
    titleInput.className = "visahoi-edit-title";
    titleInput.value = message.title;

    const textInput = document.createElement("textarea");
    textInput.className = "visahoi-edit-text";
    textInput.value = message.text;

    const save = document.createElement("button");
    save.className = "visahoi-edit-save";
    save.textContent = "Save";
    save.addEventListener("click", () => {
      if (textInput.value !== message.text) {
        this.editMessageText(message.id, textInput.value);
      }
      if (titleInput.value !== message.title) {
        this.editTooltipTitle(message.id, titleInput.value);
      }
    });

    const remove = document.createElement("button");
    remove.className = "visahoi-edit-delete";
    remove.textContent = "Delete message";
    remove.addEventListener("click", () => this.deleteMessage(message.id));

    box.append(titleInput, textInput, save, remove);
    return box;
  }

  closeTooltip(): void {
    if (this.state !== null) this.state.activeMessageId = null;
    if (this.tooltip !== null) {
      this.tooltip.style.display = "none";
      this.tooltip.innerHTML = "";
    }
  }

  // ----- edit mode -------------------------------------------------------

  setEditMode(on: boolean): void {
    const state = this.requireState();
    if (state.editMode === on) return;
    state.editMode = on;
    this.renderNav();
    const active = state.activeMessageId;
    if (active !== null) {
      const message = state.bundle.messages.find((m) => m.id === active);
      if (message !== undefined) this.renderTooltip(message);
    }
  }

  private applyOps(ops: PatchOp[]): void {
    const state = this.requireState();
    this.session.push(...ops);
    const result = applyPatch(state.bundle, ops);
    state.bundle = result.bundle;
  }

  editMessageText(messageId: string, text: string): void {
    this.applyOps([{ op: "setMessageText", messageId, text }]);
    this.refreshAfterEdit(messageId);
  }

  editTooltipTitle(messageId: string, title: string): void {
    this.applyOps([{ op: "setTooltipTitle", messageId, title }]);
    this.refreshAfterEdit(messageId);
  }

  deleteMessage(messageId: string): void {
    this.applyOps([{ op: "deleteMessage", messageId }]);
    const state = this.requireState();
    if (state.activeMessageId === messageId) this.closeTooltip();
    this.resolvePositions();
    this.renderMarkers();
    this.syncNav();
  }

  deleteStage(stageId: string): void {
    this.applyOps([{ op: "deleteStage", stageId }]);
    const state = this.requireState();
    if (state.activeStageId === stageId) {
      state.activeStageId = null;
      this.closeTooltip();
    }
    this.resolvePositions();
    this.renderMarkers();
    this.renderNav();
  }

  private refreshAfterEdit(messageId: string): void {
    const state = this.requireState();
    if (state.activeMessageId === messageId) {
      const message = state.bundle.messages.find((m) => m.id === messageId);
      if (message !== undefined) this.renderTooltip(message);
    }
  }

  /** Canonical serialization of the on-screen bundle; byte-equal to the
   * CLI `patch` output for this session's operations. */
  exportBundle(): string {
    return serializeBundle(this.requireState().bundle);
  }
}
