import { describe, expect, it } from "vitest";

import { escapeHtml, lineChart, polylinePoints } from "../src/charts";

describe("polyline mapping", () => {
  it("plots one point per epoch, verbatim, no smoothing", () => {
    const series = [1, 5, 2, 9, 9, 3].map((value, i) => ({ epoch: i + 1, value }));
    const points = polylinePoints(series, 100, 50);
    expect(points.split(" ")).toHaveLength(series.length);
  });

  it("preserves value ordering in y coordinates", () => {
    const series = [
      { epoch: 1, value: 0 },
      { epoch: 2, value: 10 },
      { epoch: 3, value: 5 },
    ];
    const ys = polylinePoints(series, 100, 100)
      .split(" ")
      .map((pair) => Number(pair.split(",")[1]));
    // SVG y grows downward: larger values sit higher (smaller y)
    expect(ys[1]).toBeLessThan(ys[0]!);
    expect(ys[2]).toBeGreaterThan(ys[1]!);
    expect(ys[2]).toBeLessThan(ys[0]!);
  });

  it("spaces x coordinates by epoch", () => {
    const series = [
      { epoch: 1, value: 1 },
      { epoch: 2, value: 1 },
      { epoch: 4, value: 1 },
    ];
    const xs = polylinePoints(series, 106, 50, 3)
      .split(" ")
      .map((pair) => Number(pair.split(",")[0]));
    expect(xs[1]! - xs[0]!).toBeCloseTo((xs[2]! - xs[1]!) / 2, 1);
  });

  it("handles constant series without dividing by zero", () => {
    const series = [
      { epoch: 1, value: 7 },
      { epoch: 2, value: 7 },
    ];
    expect(polylinePoints(series, 100, 50)).not.toContain("NaN");
  });

  it("handles empty series", () => {
    expect(polylinePoints([], 100, 50)).toBe("");
  });
});

describe("line chart svg", () => {
  it("marks flagged epochs with a vertical line", () => {
    const series = [1, 2, 3, 4].map((value, i) => ({ epoch: i + 1, value }));
    const svg = lineChart(series, { markers: [3] });
    expect(svg).toContain("chart-marker");
    const unmarked = lineChart(series, { markers: [99] });
    expect(unmarked).not.toContain("chart-marker");
  });

  it("includes the label and the exact min/max range", () => {
    const series = [
      { epoch: 1, value: 2 },
      { epoch: 2, value: 8 },
    ];
    const svg = lineChart(series, { label: "supply" });
    expect(svg).toContain("supply");
    expect(svg).toContain("2 … 8");
  });
});

describe("escapeHtml", () => {
  it("neutralizes markup in service strings", () => {
    expect(escapeHtml(`<img src="x">&`)).toBe("&lt;img src=&quot;x&quot;&gt;&amp;");
  });
});
