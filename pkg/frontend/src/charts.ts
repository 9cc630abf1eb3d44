/**
 * Chart model builders for the six figure kinds, one per prft validation
 * CSV. Builders only read the CSVs (never recompute statistics) and return
 * a plain model that the SVG renderer and the tests both consume.
 */

import { join } from "node:path";

import { numericColumn, readTable, stringColumn } from "./csv.js";
import { Scale, extent, linearScale, logScale, padded } from "./scale.js";
import { el, fmt, polygon, polyline, svgDocument, text } from "./svg.js";

export const FIGURE_KINDS = ["pdf", "acf", "psd", "periodogram", "qq", "asv"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface Series {
  name: string;
  draw: "line" | "points";
  xs: number[];
  ys: number[];
}

export interface Bar {
  label: string;
  value: number;
  err: number | null;
}

export interface Band {
  xs: number[];
  lo: number[];
  hi: number[];
}

export interface PlotModel {
  kind: FigureKind;
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  series: Series[];
  bars?: Bar[];
  band?: Band;
  diagonal?: boolean;
  /** psd only: CSV `bin` of the strongest plotted synthetic value */
  peakBin?: number;
}

const OBS_COLOR = "#e08214";
const SYN_COLOR = "#2166ac";
const BAND_COLOR = "#92c5de";

export function buildPdf(runDir: string): PlotModel {
  const table = readTable(join(runDir, "pdf_overlay.csv"), [
    "bin_center",
    "obs_density",
    "syn_density",
  ]);
  const centers = numericColumn(table, "bin_center");
  return {
    kind: "pdf",
    title: "Probability density overlay",
    xLabel: "wind speed (m/s)",
    yLabel: "density",
    xLog: false,
    yLog: false,
    series: [
      { name: "observed", draw: "line", xs: centers, ys: numericColumn(table, "obs_density") },
      { name: "surrogate", draw: "line", xs: centers, ys: numericColumn(table, "syn_density") },
    ],
  };
}

export function buildAcf(runDir: string): PlotModel {
  const table = readTable(join(runDir, "acf.csv"), ["lag", "lag_hours", "obs", "syn"]);
  const hours = numericColumn(table, "lag_hours");
  return {
    kind: "acf",
    title: "Autocorrelation",
    xLabel: "lag (hours)",
    yLabel: "ACF",
    xLog: false,
    yLog: false,
    series: [
      { name: "observed", draw: "line", xs: hours, ys: numericColumn(table, "obs") },
      { name: "surrogate", draw: "line", xs: hours, ys: numericColumn(table, "syn") },
    ],
  };
}

function positivePairs(xs: number[], ys: number[]): { xs: number[]; ys: number[] } {
  const fx: number[] = [];
  const fy: number[] = [];
  for (let i = 0; i < xs.length; i += 1) {
    if (xs[i] > 0 && ys[i] > 0 && Number.isFinite(ys[i])) {
      fx.push(xs[i]);
      fy.push(ys[i]);
    }
  }
  return { xs: fx, ys: fy };
}

export function buildPsd(runDir: string): PlotModel {
  const table = readTable(join(runDir, "periodogram.csv"), [
    "bin",
    "freq_hz",
    "obs_psd",
    "syn_psd",
  ]);
  const bins = numericColumn(table, "bin");
  const freqs = numericColumn(table, "freq_hz");
  const synPsd = numericColumn(table, "syn_psd");
  const obs = positivePairs(freqs, numericColumn(table, "obs_psd"));
  const syn = positivePairs(freqs, synPsd);

  let peakIndex = 0;
  for (let i = 1; i < synPsd.length; i += 1) {
    if (synPsd[i] > synPsd[peakIndex]) peakIndex = i;
  }

  const sqrt = (values: number[]) => values.map(Math.sqrt);
  return {
    kind: "psd",
    title: "Square-root power spectral density",
    xLabel: "frequency (Hz)",
    yLabel: "sqrt PSD (m s^-1/2)",
    xLog: true,
    yLog: true,
    series: [
      { name: "observed", draw: "line", xs: obs.xs, ys: sqrt(obs.ys) },
      { name: "surrogate", draw: "line", xs: syn.xs, ys: sqrt(syn.ys) },
    ],
    peakBin: bins[peakIndex],
  };
}

export function buildPeriodogram(runDir: string): PlotModel {
  const table = readTable(join(runDir, "periodogram.csv"), [
    "freq_cph",
    "obs_db",
    "syn_db",
  ]);
  const freqs = numericColumn(table, "freq_cph");
  const keepFinite = (ys: number[]) => {
    const fx: number[] = [];
    const fy: number[] = [];
    for (let i = 0; i < freqs.length; i += 1) {
      if (freqs[i] > 0 && Number.isFinite(ys[i])) {
        fx.push(freqs[i]);
        fy.push(ys[i]);
      }
    }
    return { xs: fx, ys: fy };
  };
  const obs = keepFinite(numericColumn(table, "obs_db"));
  const syn = keepFinite(numericColumn(table, "syn_db"));
  return {
    kind: "periodogram",
    title: "Periodogram",
    xLabel: "frequency (cycles/hour)",
    yLabel: "dB/(cycles/hour)",
    xLog: true,
    yLog: false,
    series: [
      { name: "observed", draw: "line", xs: obs.xs, ys: obs.ys },
      { name: "surrogate", draw: "line", xs: syn.xs, ys: syn.ys },
    ],
  };
}

export function buildQq(runDir: string): PlotModel {
  const table = readTable(join(runDir, "qq.csv"), ["u", "observed", "surrogate"]);
  const obs = numericColumn(table, "observed");
  return {
    kind: "qq",
    title: "Quantile-quantile",
    xLabel: "observed quantiles (m/s)",
    yLabel: "surrogate quantiles (m/s)",
    xLog: false,
    yLog: false,
    diagonal: true,
    series: [
      { name: "surrogate vs observed", draw: "points", xs: obs, ys: numericColumn(table, "surrogate") },
    ],
  };
}

export function buildAsv(runDir: string): PlotModel {
  const table = readTable(join(runDir, "asv.csv"), [
    "month",
    "obs_mean",
    "obs_std",
    "syn_mean",
    "syn_std",
  ]);
  const months = stringColumn(table, "month");
  const obsMean = numericColumn(table, "obs_mean");
  const obsStd = numericColumn(table, "obs_std");
  const synMean = numericColumn(table, "syn_mean");
  const synStd = numericColumn(table, "syn_std");
  const xs = months.map((_, i) => i);
  return {
    kind: "asv",
    title: "Average seasonal variation",
    xLabel: "month",
    yLabel: "mean wind speed (m/s)",
    xLog: false,
    yLog: false,
    bars: months.map((label, i) => ({
      label,
      value: obsMean[i],
      err: Number.isFinite(obsStd[i]) ? obsStd[i] : null,
    })),
    band: {
      xs,
      lo: synMean.map((m, i) => m - (Number.isFinite(synStd[i]) ? synStd[i] : 0)),
      hi: synMean.map((m, i) => m + (Number.isFinite(synStd[i]) ? synStd[i] : 0)),
    },
    series: [{ name: "surrogate ensemble mean", draw: "line", xs, ys: synMean }],
  };
}

export function buildModel(kind: FigureKind, runDir: string): PlotModel {
  switch (kind) {
    case "pdf":
      return buildPdf(runDir);
    case "acf":
      return buildAcf(runDir);
    case "psd":
      return buildPsd(runDir);
    case "periodogram":
      return buildPeriodogram(runDir);
    case "qq":
      return buildQq(runDir);
    case "asv":
      return buildAsv(runDir);
  }
}

// ---------------------------------------------------------------- rendering

const WIDTH = 760;
const HEIGHT = 500;
const MARGIN = { left: 78, right: 24, top: 46, bottom: 58 };

function tickLabel(value: number, log: boolean): string {
  if (log) {
    const exp = Math.log10(value);
    if (Number.isInteger(exp)) return `1e${exp}`;
  }
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(1);
  return String(Math.round(value * 1000) / 1000);
}

function collectValues(model: PlotModel, axis: "x" | "y"): number[] {
  const values: number[] = [];
  for (const s of model.series) {
    values.push(...(axis === "x" ? s.xs : s.ys));
  }
  if (model.band) {
    values.push(...(axis === "x" ? model.band.xs : [...model.band.lo, ...model.band.hi]));
  }
  if (model.bars) {
    if (axis === "x") {
      values.push(-0.5, model.bars.length - 0.5);
    } else {
      values.push(0);
      model.bars.forEach((bar) => values.push(bar.value + (bar.err ?? 0)));
    }
  }
  if (model.diagonal && axis === "y" && model.series.length > 0) {
    values.push(...model.series[0].xs);
  }
  return values;
}

function makeScales(model: PlotModel): { x: Scale; y: Scale } {
  const xRange: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
  const yRange: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
  const xDomain = extent(collectValues(model, "x"));
  const yDomain = extent(collectValues(model, "y"));
  const x = model.xLog ? logScale(xDomain, xRange) : linearScale(padded(xDomain), xRange);
  const y = model.yLog ? logScale(yDomain, yRange) : linearScale(padded(yDomain), yRange);
  return { x, y };
}

function seriesColor(index: number): string {
  return index === 0 ? OBS_COLOR : SYN_COLOR;
}

/** Deterministic SVG for a chart model. */
export function renderSvg(model: PlotModel): string {
  const { x, y } = makeScales(model);
  const parts: string[] = [];
  const plotBottom = HEIGHT - MARGIN.bottom;

  parts.push(
    el("rect", { x: 0, y: 0, width: WIDTH, height: HEIGHT, fill: "white" }),
    text(model.title, {
      x: WIDTH / 2, y: 24, "font-size": 16, "text-anchor": "middle", "font-family": "sans-serif",
    }),
  );

  // axes and ticks
  for (const tick of x.ticks()) {
    const px = x.map(tick);
    parts.push(
      el("line", { x1: px, y1: plotBottom, x2: px, y2: plotBottom + 5, stroke: "#333" }),
      el("line", { x1: px, y1: MARGIN.top, x2: px, y2: plotBottom, stroke: "#eee" }),
      text(model.kind === "asv" ? "" : tickLabel(tick, x.log), {
        x: px, y: plotBottom + 20, "font-size": 11, "text-anchor": "middle", "font-family": "sans-serif",
      }),
    );
  }
  for (const tick of y.ticks()) {
    const py = y.map(tick);
    parts.push(
      el("line", { x1: MARGIN.left - 5, y1: py, x2: MARGIN.left, y2: py, stroke: "#333" }),
      el("line", { x1: MARGIN.left, y1: py, x2: WIDTH - MARGIN.right, y2: py, stroke: "#eee" }),
      text(tickLabel(tick, y.log), {
        x: MARGIN.left - 8, y: py + 4, "font-size": 11, "text-anchor": "end", "font-family": "sans-serif",
      }),
    );
  }
  parts.push(
    el("line", { x1: MARGIN.left, y1: plotBottom, x2: WIDTH - MARGIN.right, y2: plotBottom, stroke: "#333" }),
    el("line", { x1: MARGIN.left, y1: MARGIN.top, x2: MARGIN.left, y2: plotBottom, stroke: "#333" }),
    text(model.xLabel, {
      x: (MARGIN.left + WIDTH - MARGIN.right) / 2, y: HEIGHT - 14,
      "font-size": 13, "text-anchor": "middle", "font-family": "sans-serif",
    }),
    text(model.yLabel, {
      x: 20, y: (MARGIN.top + plotBottom) / 2, "font-size": 13, "text-anchor": "middle",
      "font-family": "sans-serif",
      transform: `rotate(-90 20 ${fmt((MARGIN.top + plotBottom) / 2)})`,
    }),
  );

  // bars with error whiskers (ASV)
  if (model.bars) {
    const slot = (x.map(1) - x.map(0)) || 30;
    const barWidth = slot * 0.72;
    model.bars.forEach((bar, i) => {
      const cx = x.map(i);
      const top = y.map(bar.value);
      parts.push(
        el("rect", {
          x: cx - barWidth / 2, y: top,
          width: barWidth, height: Math.max(plotBottom - top, 0),
          fill: OBS_COLOR, "fill-opacity": 0.85,
        }),
        text(bar.label, {
          x: cx, y: plotBottom + 20, "font-size": 11, "text-anchor": "middle", "font-family": "sans-serif",
        }),
      );
      if (bar.err !== null) {
        const lo = y.map(bar.value - bar.err);
        const hi = y.map(bar.value + bar.err);
        parts.push(
          el("line", { x1: cx, y1: lo, x2: cx, y2: hi, stroke: "#b2182b", "stroke-width": 2 }),
          el("line", { x1: cx - 5, y1: hi, x2: cx + 5, y2: hi, stroke: "#b2182b", "stroke-width": 2 }),
          el("line", { x1: cx - 5, y1: lo, x2: cx + 5, y2: lo, stroke: "#b2182b", "stroke-width": 2 }),
        );
      }
    });
  }

  // confidence band (ensemble spread)
  if (model.band) {
    const upper = model.band.xs.map((v, i) => [x.map(v), y.map(model.band!.hi[i])] as [number, number]);
    const lower = model.band.xs
      .map((v, i) => [x.map(v), y.map(model.band!.lo[i])] as [number, number])
      .reverse();
    parts.push(polygon([...upper, ...lower], { fill: BAND_COLOR, "fill-opacity": 0.5 }));
  }

  if (model.diagonal && model.series.length > 0) {
    const lo = Math.max(x.domain[0], y.domain[0]);
    const hi = Math.min(x.domain[1], y.domain[1]);
    parts.push(
      el("line", {
        x1: x.map(lo), y1: y.map(lo), x2: x.map(hi), y2: y.map(hi),
        stroke: "#888", "stroke-dasharray": "5,4",
      }),
    );
  }

  model.series.forEach((s, index) => {
    const color = model.bars ? SYN_COLOR : seriesColor(index);
    if (s.draw === "line") {
      const points = s.xs.map((v, i) => [x.map(v), y.map(s.ys[i])] as [number, number]);
      parts.push(polyline(points, { stroke: color, "stroke-width": 1.6 }));
    } else {
      for (let i = 0; i < s.xs.length; i += 1) {
        parts.push(el("circle", { cx: x.map(s.xs[i]), cy: y.map(s.ys[i]), r: 3, fill: color }));
      }
    }
  });

  // legend
  const legendX = WIDTH - MARGIN.right - 170;
  const entries = model.bars
    ? [["observed", OBS_COLOR], ...model.series.map((s) => [s.name, SYN_COLOR])]
    : model.series.map((s, i) => [s.name, seriesColor(i)]);
  entries.forEach(([name, color], i) => {
    const ly = MARGIN.top + 14 + i * 18;
    parts.push(
      el("line", { x1: legendX, y1: ly, x2: legendX + 22, y2: ly, stroke: color as string, "stroke-width": 3 }),
      text(name as string, {
        x: legendX + 28, y: ly + 4, "font-size": 12, "font-family": "sans-serif",
      }),
    );
  });

  return svgDocument(WIDTH, HEIGHT, parts);
}
