import { describe, expect, it } from "vitest";

import { buildReadout, siteReadout } from "../src/readout.js";
import { REGIME_LABELS, RegimeName } from "../src/types.js";
import { loadFixtures } from "./helpers.js";

const fixtures = loadFixtures();

describe("readout fidelity", () => {
  it("every displayed number equals the service response field exactly", () => {
    for (const fixture of fixtures.evaluate) {
      const rows = buildReadout(fixture.state, fixture.response);
      expect(rows.length).toBeGreaterThan(0);
      for (const row of rows) {
        const regimeName = (Object.keys(REGIME_LABELS) as RegimeName[]).find(
          (name) => REGIME_LABELS[name] === row.regime,
        );
        expect(regimeName).toBeDefined();
        const result = fixture.response.regimes[regimeName!];
        const match = Object.values(result).find(
          (quantity) => quantity && quantity.display === row.text,
        );
        expect(match, `${row.regime}/${row.label}`).toBeDefined();
        expect(row.text).toBe(match!.display);
        expect(row.value).toBe(match!.value);
        expect(row.unit).toBe(match!.unit);
      }
    }
  });

  it("binds each quantity key to its own response field", () => {
    for (const fixture of fixtures.evaluate) {
      const rows = buildReadout(fixture.state, fixture.response);
      let cursor = 0;
      for (const regime of fixture.state.regimes) {
        const result = fixture.response.regimes[regime];
        const expected = ["beta_star", "unit_cost", "pv_unit_cost"] as const;
        for (const key of expected) {
          expect(rows[cursor].text).toBe(result[key].display);
          expect(rows[cursor].value).toBe(result[key].value);
          cursor += 1;
        }
        if (result.wtp) {
          expect(rows[cursor].text).toBe(result.wtp.display);
          cursor += 1;
        }
        if (result.gains) {
          expect(rows[cursor].text).toBe(result.gains.display);
          cursor += 1;
        }
      }
      expect(cursor).toBe(rows.length);
    }
  });

  it("the central / global grid preset displays 21.47", () => {
    const preset = fixtures.evaluate[fixtures.evaluate.length - 1];
    expect(preset.state.scenario).toBe("central");
    expect(preset.state.regimes).toContain("global");
    const rows = buildReadout(preset.state, preset.response);
    const globalCost = rows.find(
      (row) => row.regime === REGIME_LABELS.global && row.label === "unit cost of electricity",
    );
    expect(globalCost?.text).toBe("21.47");
    expect(globalCost?.unit).toBe("USD/MWh");
  });

  it("site rows pass the service displays through verbatim", () => {
    const fixture = fixtures.evaluate[0];
    for (const row of siteReadout(fixture.response)) {
      const quantity = Object.values(fixture.response.site).find(
        (candidate) => candidate && candidate.display === row.text,
      );
      expect(quantity).toBeDefined();
    }
  });
});
