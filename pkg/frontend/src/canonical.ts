/** Canonical bundle serialization, byte-compatible with the CLI output:
 * keys sorted, arrays in semantic order, two-space indent, trailing
 * newline. Exported bundles must round-trip through `visahoi patch`
 * without a byte of difference. */

import { Bundle, sortedMessages, sortedStages } from "./types.js";

function deepSort(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(deepSort);
  }
  if (typeof value === "object" && value !== null) {
    const source = value as Record<string, unknown>;
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(source).sort()) {
      if (source[key] !== undefined) {
        out[key] = deepSort(source[key]);
      }
    }
    return out;
  }
  return value;
}

export function canonicalJson(value: unknown): string {
  return JSON.stringify(deepSort(value), null, 2) + "\n";
}

export function serializeBundle(bundle: Bundle): string {
  const body = {
    ...bundle,
    stages: sortedStages(bundle),
    messages: sortedMessages(bundle),
  };
  return canonicalJson(body);
}
