/** Explorer state: always serializable to a valid service request and to
 * the URL, so a shared link reproduces the identical view and numbers. */

import { ALL_REGIMES, EvaluateRequestBody, RegimeName } from "./types.js";

export type Mode = "w" | "latitude";
export type Tab = "scenario" | "surface" | "latitude";

export interface PvInputs {
  capexGen: number;
  lifetimeGen: number;
  capexSto: number;
  lifetimeSto: number;
  discountRate: number;
}

export interface UIScenarioState {
  mode: Mode;
  w: number;
  latitude: number;
  k: number;
  ratio: number;
  scenario: string;
  pv: PvInputs;
  estar: number;
  regimes: RegimeName[];
  tab: Tab;
  surfaceRes: number;
  sweepStep: number;
  pins: PinnedScenario[];
}

/** A pinned comparison is an immutable snapshot of the control state;
 * its numbers are re-queried from the service (single source of truth). */
export interface PinnedScenario {
  label: string;
  state: Omit<UIScenarioState, "pins" | "tab">;
}

export const DEFAULT_PV: PvInputs = {
  capexGen: 500,
  lifetimeGen: 30,
  capexSto: 200,
  lifetimeSto: 15,
  discountRate: 0.05,
};

export function defaultState(): UIScenarioState {
  return {
    mode: "w",
    w: 2,
    latitude: 30,
    k: 0.79,
    ratio: 0.6,
    scenario: "central",
    pv: { ...DEFAULT_PV },
    estar: 1515,
    regimes: ["autarky", "north_south"],
    tab: "scenario",
    surfaceRes: 100,
    sweepStep: 1,
    pins: [],
  };
}

/** The "central / global grid" preset: reference costs, all regimes. */
export function centralGlobalPreset(): UIScenarioState {
  return {
    ...defaultState(),
    mode: "latitude",
    latitude: 30,
    scenario: "central",
    regimes: [...ALL_REGIMES],
  };
}

export interface ValidationIssue {
  field: string;
  message: string;
}

/** Client-side domain checks; invalid states are never submitted. */
export function validate(state: UIScenarioState): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  if (state.mode === "w") {
    if (!(state.w >= 0) || !Number.isFinite(state.w)) {
      issues.push({ field: "w", message: "winter hole must be a finite number >= 0" });
    }
    if (!(state.k >= 0 && state.k <= 1)) {
      issues.push({ field: "k", message: "fixed-cost share must be between 0 and 1" });
    }
    if (!(state.ratio >= 0) || !Number.isFinite(state.ratio)) {
      issues.push({ field: "ratio", message: "cost ratio must be >= 0" });
    }
  } else if (!(Math.abs(state.latitude) <= 55)) {
    issues.push({ field: "latitude", message: "latitude must be within +-55 degrees" });
  }
  for (const [name, value] of Object.entries(state.pv)) {
    if (!Number.isFinite(value) || value <= 0) {
      if (!(name === "discountRate" && value === 0)) {
        issues.push({ field: `pv.${name}`, message: "must be a positive number" });
      }
    }
  }
  if (state.regimes.length === 0) {
    issues.push({ field: "regimes", message: "select at least one regime" });
  }
  if (!(state.surfaceRes >= 2 && state.surfaceRes <= 500)) {
    issues.push({ field: "surfaceRes", message: "surface resolution must be 2..500" });
  }
  return issues;
}

function pvIsDefault(pv: PvInputs): boolean {
  return (Object.keys(DEFAULT_PV) as (keyof PvInputs)[]).every(
    (key) => pv[key] === DEFAULT_PV[key],
  );
}

/** The service request a state stands for; identical states always map
 * to the identical request body. */
export function toRequest(state: UIScenarioState): EvaluateRequestBody {
  const body: EvaluateRequestBody = { regimes: [...state.regimes] };
  if (state.mode === "w") {
    body.w = state.w;
    body.k = state.k;
    body.ratio = state.ratio;
  } else {
    body.latitude = state.latitude;
    body.scenario = state.scenario;
    if (!pvIsDefault(state.pv)) {
      body.pv = {
        capex_gen: state.pv.capexGen,
        lifetime_gen: state.pv.lifetimeGen,
        capex_sto: state.pv.capexSto,
        lifetime_sto: state.pv.lifetimeSto,
        discount_rate: state.pv.discountRate,
      };
    }
    if (state.estar !== 1515) {
      body.estar = state.estar;
    }
  }
  return body;
}

// URL serialization: numbers go through String()/Number() which round-trips
// IEEE doubles exactly, so reloading a link restores the identical state.

function encodePins(pins: PinnedScenario[]): string {
  return encodeURIComponent(JSON.stringify(pins));
}

function decodePins(raw: string): PinnedScenario[] {
  const parsed = JSON.parse(decodeURIComponent(raw));
  if (!Array.isArray(parsed)) throw new Error("pins must be an array");
  return parsed as PinnedScenario[];
}

export function serializeState(state: UIScenarioState): string {
  const params = new URLSearchParams();
  params.set("mode", state.mode);
  params.set("w", String(state.w));
  params.set("lat", String(state.latitude));
  params.set("k", String(state.k));
  params.set("ratio", String(state.ratio));
  params.set("scenario", state.scenario);
  params.set("capexGen", String(state.pv.capexGen));
  params.set("lifeGen", String(state.pv.lifetimeGen));
  params.set("capexSto", String(state.pv.capexSto));
  params.set("lifeSto", String(state.pv.lifetimeSto));
  params.set("rate", String(state.pv.discountRate));
  params.set("estar", String(state.estar));
  params.set("regimes", state.regimes.join(","));
  params.set("tab", state.tab);
  params.set("surfaceRes", String(state.surfaceRes));
  params.set("sweepStep", String(state.sweepStep));
  if (state.pins.length > 0) {
    params.set("pins", encodePins(state.pins));
  }
  return params.toString();
}

export function deserializeState(query: string): UIScenarioState {
  const params = new URLSearchParams(query);
  const base = defaultState();
  const num = (key: string, fallback: number): number => {
    const raw = params.get(key);
    if (raw === null || raw === "") return fallback;
    const value = Number(raw);
    return Number.isNaN(value) ? fallback : value;
  };
  const mode = params.get("mode") === "latitude" ? "latitude" : "w";
  const tabRaw = params.get("tab");
  const tab: Tab =
    tabRaw === "surface" || tabRaw === "latitude" ? tabRaw : "scenario";
  const regimesRaw = params.get("regimes");
  const regimes = (regimesRaw ? regimesRaw.split(",") : base.regimes).filter(
    (name): name is RegimeName => (ALL_REGIMES as readonly string[]).includes(name),
  );
  let pins: PinnedScenario[] = [];
  const pinsRaw = params.get("pins");
  if (pinsRaw) {
    try {
      pins = decodePins(pinsRaw);
    } catch {
      pins = [];
    }
  }
  return {
    mode,
    w: num("w", base.w),
    latitude: num("lat", base.latitude),
    k: num("k", base.k),
    ratio: num("ratio", base.ratio),
    scenario: params.get("scenario") ?? base.scenario,
    pv: {
      capexGen: num("capexGen", base.pv.capexGen),
      lifetimeGen: num("lifeGen", base.pv.lifetimeGen),
      capexSto: num("capexSto", base.pv.capexSto),
      lifetimeSto: num("lifeSto", base.pv.lifetimeSto),
      discountRate: num("rate", base.pv.discountRate),
    },
    estar: num("estar", base.estar),
    regimes: regimes.length > 0 ? regimes : base.regimes,
    tab,
    surfaceRes: num("surfaceRes", base.surfaceRes),
    sweepStep: num("sweepStep", base.sweepStep),
    pins,
  };
}
