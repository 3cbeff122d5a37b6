import { execSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { Bundle } from "../src/types.js";

export const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "../..");
export const FIXTURES = path.join(REPO_ROOT, "tests", "fixtures");

export function cli(args: string): string {
  return execSync(`python3 -m visahoi ${args}`, { cwd: REPO_ROOT, encoding: "utf8" });
}

export function tempDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "visahoi-viewer-"));
}

export interface GeneratedFixture {
  bundleText: string;
  bundlePath: string;
  svgText: string;
  dir: string;
}

/** Generate a bundle through the CLI so viewer tests consume the real
 * public artifact, not a hand-rolled lookalike. */
export function generateFixture(
  stem: string,
  grammar: string,
  chartType: string,
  svgName: string,
  contextKey: string,
): GeneratedFixture {
  const dir = tempDir();
  const bundlePath = path.join(dir, `${stem}.bundle.json`);
  const spec = path.join(FIXTURES, "specs", `${stem}.json`);
  const svgPath = path.join(FIXTURES, "svgs", svgName);
  cli(
    `generate --grammar ${grammar} --spec ${spec} --type ${chartType}` +
      ` --svg ${svgPath} --context-key ${contextKey} -o ${bundlePath}`,
  );
  return {
    bundleText: fs.readFileSync(bundlePath, "utf8"),
    bundlePath,
    svgText: fs.readFileSync(svgPath, "utf8"),
    dir,
  };
}

export function loadBundleJson(fixture: GeneratedFixture): Bundle {
  return JSON.parse(fixture.bundleText) as Bundle;
}
