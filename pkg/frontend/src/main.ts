/** Page bootstrap: load a bundle + SVG via ?bundle=&svg= query params or
 * the file pickers, wire the edit-mode toggle and bundle download. */

import { Viewer } from "./viewer.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing #${id}`);
  return el as T;
}

async function fetchText(url: string): Promise<string> {
  const response = await fetch(url);
  if (!response.ok) throw new Error(`failed to fetch ${url}: ${response.status}`);
  return response.text();
}

function download(name: string, content: string): void {
  const blob = new Blob([content], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = name;
  link.click();
  URL.revokeObjectURL(url);
}

export function setup(): void {
  const viewer = new Viewer(byId("viewer"));
  const bundleInput = byId<HTMLInputElement>("bundle-file");
  const svgInput = byId<HTMLInputElement>("svg-file");
  const loadButton = byId<HTMLButtonElement>("load-button");
  const editToggle = byId<HTMLInputElement>("edit-toggle");
  const exportButton = byId<HTMLButtonElement>("export-button");

  let bundleText: string | null = null;
  let svgText: string | null = null;

  const tryLoad = () => {
    if (bundleText === null || svgText === null) return;
    viewer.load(JSON.parse(bundleText), svgText);
    editToggle.disabled = false;
    exportButton.disabled = false;
  };

  const readInto = (input: HTMLInputElement, sink: (text: string) => void) => {
    const file = input.files?.[0];
    if (!file) return Promise.resolve();
    return file.text().then(sink);
  };

  loadButton.addEventListener("click", () => {
    Promise.all([
      readInto(bundleInput, (t) => (bundleText = t)),
      readInto(svgInput, (t) => (svgText = t)),
    ]).then(tryLoad);
  });

  editToggle.addEventListener("change", () => viewer.setEditMode(editToggle.checked));

  exportButton.addEventListener("click", () => {
    download("edited.bundle.json", viewer.exportBundle());
  });

  const params = new URLSearchParams(window.location.search);
  const bundleUrl = params.get("bundle");
  const svgUrl = params.get("svg");
  if (bundleUrl && svgUrl) {
    Promise.all([fetchText(bundleUrl), fetchText(svgUrl)])
      .then(([b, s]) => {
        bundleText = b;
        svgText = s;
        tryLoad();
      })
      .catch((error) => {
        byId("viewer").textContent = `Load failed: ${error}`;
      });
  }
}

if (typeof document !== "undefined" && document.getElementById("viewer") !== null) {
  setup();
}
