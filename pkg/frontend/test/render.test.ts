import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, readdirSync, statSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, test } from "vitest";

import { FIGURE_KINDS } from "../src/charts.js";
import { parseKinds, renderAll } from "../src/render.js";

const RUN_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "run");

function hashDir(dir: string): string {
  const hash = createHash("sha256");
  for (const name of readdirSync(dir).sort()) {
    hash.update(name);
    hash.update(readFileSync(join(dir, name)));
  }
  return hash.digest("hex");
}

describe("renderAll", () => {
  test("renders all six kinds from a completed validate run", () => {
    const before = hashDir(RUN_DIR);
    const out = mkdtempSync(join(tmpdir(), "plots-"));
    const results = renderAll([...FIGURE_KINDS], RUN_DIR, out);
    expect(results.length).toBe(6);
    for (const kind of FIGURE_KINDS) {
      const path = join(out, `${kind}.svg`);
      expect(statSync(path).size).toBeGreaterThan(500);
      expect(readFileSync(path, "utf-8")).toContain("</svg>");
    }
    // inputs are strictly read-only
    expect(hashDir(RUN_DIR)).toBe(before);
  });

  test("re-rendering is reproducible", () => {
    const out1 = mkdtempSync(join(tmpdir(), "plots-"));
    const out2 = mkdtempSync(join(tmpdir(), "plots-"));
    renderAll(["qq", "asv"], RUN_DIR, out1);
    renderAll(["qq", "asv"], RUN_DIR, out2);
    expect(hashDir(out1)).toBe(hashDir(out2));
  });

  test("missing run directory is a clear error", () => {
    expect(() => renderAll(["pdf"], "/nonexistent/run", tmpdir())).toThrow(/not found/);
  });
});

describe("parseKinds", () => {
  test("defaults to all six kinds", () => {
    expect(parseKinds(undefined)).toEqual([...FIGURE_KINDS]);
  });

  test("accepts a comma list", () => {
    expect(parseKinds("pdf,acf,psd,qq,asv")).toEqual(["pdf", "acf", "psd", "qq", "asv"]);
  });

  test("rejects unknown kinds", () => {
    expect(() => parseKinds("pdf,heatmap")).toThrow(/unknown figure kind "heatmap"/);
  });
});
