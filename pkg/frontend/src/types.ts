/** Bundle wire schema (visahoi-bundle/1), as emitted by the CLI. */

export const SCHEMA_VERSION = "visahoi-bundle/1";

export interface Stage {
  id: string;
  title: string;
  iconName: string;
  color: string;
  order: number;
}

export interface AnchorCoords {
  kind: "coords";
  x: number;
  y: number;
}

export interface AnchorSelector {
  kind: "selector";
  sel: string;
}

export interface AnchorFindByValue {
  kind: "findByValue";
  value: string;
  offset: { left: number; top: number };
}

export type ExtremumMeasure = "cx" | "cy" | "rectHeight" | "rectArea";

export interface AnchorMarkExtremum {
  kind: "markExtremum";
  sel: string;
  measure: ExtremumMeasure;
  direction: "min" | "max";
}

export interface AnchorResolved {
  kind: "resolved";
  x: number;
  y: number;
  strategy: string;
}

export type Anchor =
  | AnchorCoords
  | AnchorSelector
  | AnchorFindByValue
  | AnchorMarkExtremum
  | AnchorResolved;

export type TooltipPlacement = "top" | "bottom" | "left" | "right";

export interface Message {
  id: string;
  markerId: string;
  text: string;
  title: string;
  stageId: string;
  order: number;
  tooltipPlacement: TooltipPlacement;
  anchor: Anchor;
  markerNumber?: number;
}

export interface Nav {
  showStepper: boolean;
  alignment: "vertical" | "horizontal";
}

export interface Bundle {
  schemaVersion: string;
  contextKey: string;
  chart: { grammar: string; chartType: string; width: number; height: number };
  stages: Stage[];
  messages: Message[];
  nav: Nav;
  markerNumbers: boolean;
}

export function validateBundle(value: unknown): Bundle {
  if (typeof value !== "object" || value === null) {
    throw new Error("bundle must be a JSON object");
  }
  const bundle = value as Bundle;
  if (bundle.schemaVersion !== SCHEMA_VERSION) {
    throw new Error(
      `bundle schemaVersion ${JSON.stringify(bundle.schemaVersion)} is not supported` +
        ` (expected ${JSON.stringify(SCHEMA_VERSION)})`,
    );
  }
  if (!Array.isArray(bundle.stages) || !Array.isArray(bundle.messages)) {
    throw new Error("bundle misses stages/messages arrays");
  }
  const stageIds = new Set(bundle.stages.map((s) => s.id));
  for (const message of bundle.messages) {
    if (!stageIds.has(message.stageId)) {
      throw new Error(`message ${message.id} references unknown stage ${message.stageId}`);
    }
  }
  return bundle;
}

/** Global message order: (stage.order, message.order), stable. */
export function sortedMessages(bundle: Bundle): Message[] {
  const stageOrder = new Map(bundle.stages.map((s) => [s.id, s.order]));
  return [...bundle.messages].sort((a, b) => {
    const sa = stageOrder.get(a.stageId) ?? 0;
    const sb = stageOrder.get(b.stageId) ?? 0;
    return sa === sb ? a.order - b.order : sa - sb;
  });
}

export function sortedStages(bundle: Bundle): Stage[] {
  return [...bundle.stages].sort((a, b) => a.order - b.order);
}

/** Marker display number: explicit markerNumber, else 1-based position in
 * the global sorted order (gaps stay gaps after deletions). */
export function markerNumberOf(bundle: Bundle, messageId: string): number | null {
  const ordered = sortedMessages(bundle);
  for (let i = 0; i < ordered.length; i++) {
    const message = ordered[i]!;
    if (message.id === messageId) {
      return message.markerNumber ?? i + 1;
    }
  }
  return null;
}
