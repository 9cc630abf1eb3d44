/** Axis scales and tick generation for the SVG charts. */

export interface Scale {
  domain: [number, number];
  range: [number, number];
  log: boolean;
  map(value: number): number;
  ticks(): number[];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return {
    domain,
    range,
    log: false,
    map: (v) => r0 + ((v - d0) / span) * (r1 - r0),
    ticks: () => niceTicks(d0, d1, 6),
  };
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale requires positive domain, got [${d0}, ${d1}]`);
  }
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  return {
    domain,
    range,
    log: true,
    map: (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0),
    ticks: () => decadeTicks(d0, d1),
  };
}

/** Round tick positions covering [lo, hi] at a 1/2/5 step. */
export function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(count - 1, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[3];
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Powers of ten inside [lo, hi] (at least the endpoints' decades). */
export function decadeTicks(lo: number, hi: number): number[] {
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  const ticks: number[] = [];
  for (let e = first; e <= last; e += 1) {
    ticks.push(Number(`1e${e}`)); // exact decimal literal, unlike Math.pow
  }
  return ticks.length > 0 ? ticks : [lo];
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (lo === Infinity) {
    throw new Error("no finite values to scale");
  }
  return [lo, hi];
}

export function padded(domain: [number, number], fraction = 0.04): [number, number] {
  const [lo, hi] = domain;
  const pad = (hi - lo || Math.abs(lo) || 1) * fraction;
  return [lo - pad, hi + pad];
}
