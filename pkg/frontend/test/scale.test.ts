import { describe, expect, test } from "vitest";

import { decadeTicks, extent, linearScale, logScale, niceTicks } from "../src/scale.js";

describe("linearScale", () => {
  test("maps domain endpoints to range endpoints", () => {
    const s = linearScale([0, 10], [100, 200]);
    expect(s.map(0)).toBe(100);
    expect(s.map(10)).toBe(200);
    expect(s.map(5)).toBe(150);
  });

  test("inverted ranges work (SVG y axis)", () => {
    const s = linearScale([0, 1], [400, 40]);
    expect(s.map(0)).toBe(400);
    expect(s.map(1)).toBe(40);
  });
});

describe("logScale", () => {
  test("maps decades evenly", () => {
    const s = logScale([1e-8, 1e-4], [0, 4]);
    expect(s.map(1e-8)).toBeCloseTo(0);
    expect(s.map(1e-6)).toBeCloseTo(2);
    expect(s.map(1e-4)).toBeCloseTo(4);
  });

  test("rejects nonpositive domains", () => {
    expect(() => logScale([0, 1], [0, 1])).toThrow(/positive/);
  });
});

describe("ticks", () => {
  test("nice ticks stay inside the domain and use round steps", () => {
    const ticks = niceTicks(0, 9.3, 6);
    expect(ticks[0]).toBe(0);
    expect(ticks.at(-1)).toBeLessThanOrEqual(9.3);
    const steps = new Set(ticks.slice(1).map((t, i) => +(t - ticks[i]).toFixed(9)));
    expect(steps.size).toBe(1);
  });

  test("decade ticks cover the domain", () => {
    expect(decadeTicks(3e-8, 2e-4)).toEqual([1e-7, 1e-6, 1e-5, 1e-4]);
  });

  test("extent skips non-finite values", () => {
    expect(extent([NaN, 2, -1, Infinity])).toEqual([-1, 2]);
    expect(() => extent([NaN])).toThrow(/finite/);
  });
});
