import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { UIScenarioState } from "../src/state.js";
import { EvaluateRequestBody, EvaluateResponse, SurfaceResponse, SweepResponse } from "../src/types.js";

export interface EvaluateFixture {
  state: UIScenarioState;
  request: EvaluateRequestBody;
  response: EvaluateResponse;
}

export interface Fixtures {
  evaluate: EvaluateFixture[];
  surface: {
    params: Record<string, number>;
    response: SurfaceResponse;
    spot_checks: {
      k_index: number;
      ratio_index: number;
      response: EvaluateResponse;
    }[];
  };
  sweep: { scenario: string; step: number; response: SweepResponse };
  sweep_csv: { scenario: string; step: number; content: string };
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixtures(): Fixtures {
  return JSON.parse(readFileSync(join(here, "fixtures.json"), "utf-8")) as Fixtures;
}

/** Minimal fetch stub returning canned bodies per URL matcher. */
export function fakeFetch(
  handler: (url: string, init?: RequestInit) => { status?: number; body: string },
): (url: string, init?: RequestInit) => Promise<Response> {
  return async (url, init) => {
    const { status = 200, body } = handler(url, init);
    return new Response(body, {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}
