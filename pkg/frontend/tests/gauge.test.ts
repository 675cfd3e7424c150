import { describe, expect, it } from "vitest";

import { gaugeGeometry, valueToX } from "../src/gauge.js";

describe("gauge geometry", () => {
  it("places the three markers exactly at -0.5, 0, +0.5", () => {
    const geometry = gaugeGeometry(0.123, 600);
    expect(geometry.ticks.map((t) => t.value)).toEqual([-0.5, 0, 0.5]);
    expect(geometry.ticks.map((t) => t.x)).toEqual([150, 300, 450]);
  });

  it("maps the interval ends onto the gauge ends", () => {
    expect(valueToX(-1, 600)).toBe(0);
    expect(valueToX(1, 600)).toBe(600);
    expect(valueToX(0, 600)).toBe(300);
  });

  it("is linear in the trust value", () => {
    const width = 480;
    for (const v of [-1, -0.75, -0.5, -0.1, 0, 0.25, 0.5, 0.9, 1]) {
      expect(valueToX(v, width)).toBeCloseTo(((v + 1) / 2) * width, 12);
    }
  });

  it("pointer lands on the exact service value, no rounding", () => {
    const value = 0.8818010419906139;
    expect(gaugeGeometry(value, 600).pointerX).toBe(((value + 1) / 2) * 600);
  });

  it("rejects values outside the continuum", () => {
    expect(() => valueToX(1.01, 600)).toThrow(/outside/);
    expect(() => valueToX(Number.NaN, 600)).toThrow(/outside/);
  });

  it("regions tile the bar between the thresholds", () => {
    const { regions } = gaugeGeometry(0, 600);
    expect(regions.map((r) => r.name)).toEqual(["distrust", "leaning", "trust"]);
    expect(regions[0]).toMatchObject({ from: 0, to: 150 });
    expect(regions[1]).toMatchObject({ from: 150, to: 450 });
    expect(regions[2]).toMatchObject({ from: 450, to: 600 });
  });
});
