import { describe, expect, it } from "vitest";

import {
  centralGlobalPreset,
  defaultState,
  deserializeState,
  serializeState,
  toRequest,
  validate,
} from "../src/state.js";
import { loadFixtures } from "./helpers.js";

const fixtures = loadFixtures();

describe("URL state serialization", () => {
  it("round-trips the default state losslessly", () => {
    const state = defaultState();
    expect(deserializeState(serializeState(state))).toEqual(state);
  });

  it("round-trips every recorded control state losslessly", () => {
    for (const fixture of fixtures.evaluate) {
      const restored = deserializeState(serializeState(fixture.state));
      expect(restored).toEqual(fixture.state);
    }
  });

  it("round-trips awkward float values exactly", () => {
    const state = defaultState();
    state.w = 0.30000000000000004;
    state.ratio = 7 / 22;
    state.k = 1e-9;
    expect(deserializeState(serializeState(state))).toEqual(state);
  });

  it("round-trips pinned comparisons", () => {
    const state = centralGlobalPreset();
    const { pins: _, tab: __, ...snapshot } = state;
    state.pins = [{ label: "pin 1", state: structuredClone(snapshot) }];
    expect(deserializeState(serializeState(state))).toEqual(state);
  });

  it("falls back to defaults on junk input", () => {
    const restored = deserializeState("w=banana&mode=nonsense&regimes=warp");
    expect(restored.mode).toBe("w");
    expect(restored.w).toBe(defaultState().w);
    expect(restored.regimes).toEqual(defaultState().regimes);
  });
});

describe("client-side validation", () => {
  it("accepts the defaults and the preset", () => {
    expect(validate(defaultState())).toEqual([]);
    expect(validate(centralGlobalPreset())).toEqual([]);
  });

  it("blocks k outside [0, 1] before submission", () => {
    const state = defaultState();
    state.k = 1.5;
    const issues = validate(state);
    expect(issues.some((issue) => issue.field === "k")).toBe(true);
  });

  it("blocks negative winter hole and out-of-domain latitude", () => {
    const withW = { ...defaultState(), w: -1 };
    expect(validate(withW).some((issue) => issue.field === "w")).toBe(true);
    const withLat = { ...defaultState(), mode: "latitude" as const, latitude: 80 };
    expect(validate(withLat).some((issue) => issue.field === "latitude")).toBe(true);
  });

  it("requires at least one regime", () => {
    const state = { ...defaultState(), regimes: [] };
    expect(validate(state).some((issue) => issue.field === "regimes")).toBe(true);
  });
});

describe("request building", () => {
  it("reproduces every recorded request body exactly", () => {
    for (const fixture of fixtures.evaluate) {
      expect(toRequest(fixture.state)).toEqual(fixture.request);
    }
  });

  it("omits pv overrides when they match the defaults", () => {
    const preset = centralGlobalPreset();
    expect(toRequest(preset).pv).toBeUndefined();
    preset.pv.capexGen = 450;
    expect(toRequest(preset).pv?.capex_gen).toBe(450);
  });
});
