import { cpSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, test } from "vitest";

import {
  buildAcf,
  buildAsv,
  buildModel,
  buildPdf,
  buildPeriodogram,
  buildPsd,
  buildQq,
  renderSvg,
} from "../src/charts.js";

const RUN_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "run");
const REPORT = JSON.parse(readFileSync(join(RUN_DIR, "report.json"), "utf-8"));

describe("model builders on a real validate run", () => {
  test("pdf overlay has two equal-length line series", () => {
    const model = buildPdf(RUN_DIR);
    expect(model.series.length).toBe(2);
    expect(model.series[0].xs.length).toBe(50);
    expect(model.series[1].ys.length).toBe(50);
    expect(model.series.every((s) => s.draw === "line")).toBe(true);
  });

  test("acf x axis is in hours", () => {
    const model = buildAcf(RUN_DIR);
    expect(model.xLabel).toContain("hours");
    expect(model.series[0].xs.at(-1)).toBe(100);
    expect(model.series[0].ys[0]).toBeCloseTo(1, 10);
  });

  test("psd peak bin matches the bin recorded in report.json", () => {
    const model = buildPsd(RUN_DIR);
    expect(model.peakBin).toBe(REPORT.psd_peaks.syn[0].bin);
    expect(model.xLog && model.yLog).toBe(true);
  });

  test("periodogram axes are cycles/hour and dB", () => {
    const model = buildPeriodogram(RUN_DIR);
    expect(model.xLabel).toContain("cycles/hour");
    expect(model.yLabel).toContain("dB");
    expect(model.xLog).toBe(true);
    expect(model.yLog).toBe(false);
  });

  test("qq is a point cloud with the diagonal reference", () => {
    const model = buildQq(RUN_DIR);
    expect(model.diagonal).toBe(true);
    expect(model.series[0].draw).toBe("points");
    expect(model.series[0].xs.length).toBe(100);
  });

  test("asv has 12 bars, an ensemble band, and a mean line", () => {
    const model = buildAsv(RUN_DIR);
    expect(model.bars?.length).toBe(12);
    expect(model.bars?.[0].label).toBe("Jan");
    expect(model.band?.xs.length).toBe(12);
    for (let i = 0; i < 12; i += 1) {
      expect(model.band!.lo[i]).toBeLessThanOrEqual(model.band!.hi[i]);
    }
    expect(model.series[0].ys.length).toBe(12);
  });
});

describe("renderSvg", () => {
  test("produces a complete svg document for every kind", () => {
    for (const kind of ["pdf", "acf", "psd", "periodogram", "qq", "asv"] as const) {
      const svg = renderSvg(buildModel(kind, RUN_DIR));
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg.endsWith("</svg>")).toBe(true);
      // every kind draws data marks: lines or a point cloud
      expect(/<polyline |<circle /.test(svg)).toBe(true);
    }
  });

  test("asv svg draws 12 bar rects", () => {
    const svg = renderSvg(buildAsv(RUN_DIR));
    const bars = svg.match(/<rect [^>]*fill="#e08214"/g) ?? [];
    expect(bars.length).toBe(12);
  });

  test("identical inputs render byte-identical svgs", () => {
    const first = renderSvg(buildPsd(RUN_DIR));
    const second = renderSvg(buildPsd(RUN_DIR));
    expect(second).toBe(first);
  });
});

describe("schema errors", () => {
  test("renamed column yields a column diagnostic", () => {
    const dir = mkdtempSync(join(tmpdir(), "badrun-"));
    cpSync(RUN_DIR, dir, { recursive: true });
    const acf = readFileSync(join(dir, "acf.csv"), "utf-8");
    const broken = acf.replace("lag,lag_hours,obs,syn", "lag,lag_hours,observed,syn");
    writeFileSync(join(dir, "acf.csv"), broken);
    expect(() => buildAcf(dir)).toThrow(/missing column\(s\) \[obs\]/);
  });
});
