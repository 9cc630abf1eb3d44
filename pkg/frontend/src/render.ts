import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { FIGURE_KINDS, FigureKind, PlotModel, buildModel, renderSvg } from "./charts.js";

export interface RenderResult {
  kind: FigureKind;
  model: PlotModel;
  path: string;
}

/** Build one figure from a validate run directory and write its SVG. */
export function renderKind(kind: FigureKind, inDir: string, outDir: string): RenderResult {
  const model = buildModel(kind, inDir);
  const svg = renderSvg(model);
  mkdirSync(outDir, { recursive: true });
  const path = join(outDir, `${kind}.svg`);
  writeFileSync(path, svg, "utf-8");
  return { kind, model, path };
}

export function renderAll(
  kinds: FigureKind[],
  inDir: string,
  outDir: string,
): RenderResult[] {
  if (!existsSync(inDir)) {
    throw new Error(`input directory not found: ${inDir}`);
  }
  return kinds.map((kind) => renderKind(kind, inDir, outDir));
}

export function parseKinds(spec: string | undefined): FigureKind[] {
  if (!spec) {
    return [...FIGURE_KINDS];
  }
  const kinds = spec.split(",").map((s) => s.trim()).filter((s) => s.length > 0);
  for (const kind of kinds) {
    if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
      throw new Error(`unknown figure kind "${kind}" (valid: ${FIGURE_KINDS.join(", ")})`);
    }
  }
  return kinds as FigureKind[];
}
