import { describe, expect, it } from "vitest";

import { cellAt, coverageColor } from "../src/surface.js";
import { loadFixtures } from "./helpers.js";

const fixtures = loadFixtures();
const surface = fixtures.surface.response;

describe("coverage surface", () => {
  it("hover readout equals the pointwise evaluation at that cell", () => {
    for (const check of fixtures.surface.spot_checks) {
      const cols = surface.ratio_values.length;
      const rows = surface.k_values.length;
      const xFrac = check.ratio_index / (cols - 1);
      const yFrac = 1 - check.k_index / (rows - 1);
      const hover = cellAt(surface, xFrac, yFrac);
      expect(hover).not.toBeNull();
      expect(hover!.k).toBe(surface.k_values[check.k_index]);
      expect(hover!.ratio).toBe(surface.ratio_values[check.ratio_index]);
      const pointwise = check.response.regimes.autarky.beta_star.value;
      expect(hover!.beta).toBe(pointwise);
    }
  });

  it("the entry cliff is present in every sampled column", () => {
    for (const row of surface.beta) {
      const jumps = row.slice(1).map((b, i) => Math.abs(b - row[i]));
      expect(Math.max(...jumps)).toBeGreaterThan(surface.excess_threshold * 0.9);
    }
  });

  it("degenerate 1x1 grid still resolves a cell", () => {
    const tiny = {
      ...surface,
      k_values: [0.5],
      ratio_values: [0.3],
      beta: [[0.75]],
      entry_ratio_per_k: [0.4],
    };
    const hover = cellAt(tiny, 0.5, 0.5);
    expect(hover).toEqual({ k: 0.5, ratio: 0.3, beta: 0.75, entryRatio: 0.4 });
  });

  it("returns null outside the plot area", () => {
    expect(cellAt(surface, -0.1, 0.5)).toBeNull();
    expect(cellAt(surface, 0.5, 1.2)).toBeNull();
  });

  it("color ramp clamps and spans the palette", () => {
    expect(coverageColor(-1)).toBe(coverageColor(0));
    expect(coverageColor(2)).toBe(coverageColor(1));
    expect(coverageColor(0)).not.toBe(coverageColor(1));
  });
});
