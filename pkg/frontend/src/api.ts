/** Service client: debounced evaluation with in-flight cancellation and
 * a single-flight gate for sweep requests. */

import { UIScenarioState, toRequest } from "./state.js";
import { EvaluateResponse, SurfaceResponse, SweepResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      detail = JSON.stringify(body.detail ?? body);
    } catch {
      /* keep the status text */
    }
    throw new ServiceError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  private evaluateAbort: AbortController | null = null;
  private sweepInFlight = false;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  /** POST /v1/evaluate; a new call cancels the previous in-flight one. */
  async evaluate(state: UIScenarioState): Promise<EvaluateResponse> {
    this.evaluateAbort?.abort();
    const controller = new AbortController();
    this.evaluateAbort = controller;
    const response = await this.fetchImpl(`${this.baseUrl}/v1/evaluate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(toRequest(state)),
      signal: controller.signal,
    });
    return asJson<EvaluateResponse>(response);
  }

  /** GET /v1/surface; at most one sweep request is outstanding. */
  async surface(w: number, resolution: number): Promise<SurfaceResponse | null> {
    if (this.sweepInFlight) return null;
    this.sweepInFlight = true;
    try {
      const params = new URLSearchParams({
        w: String(w),
        k_steps: String(resolution),
        ratio_steps: String(resolution),
      });
      const response = await this.fetchImpl(`${this.baseUrl}/v1/surface?${params}`);
      return await asJson<SurfaceResponse>(response);
    } finally {
      this.sweepInFlight = false;
    }
  }

  async latitudeSweep(scenario: string, step: number): Promise<SweepResponse> {
    const params = new URLSearchParams({ scenario, step: String(step) });
    const response = await this.fetchImpl(`${this.baseUrl}/v1/latitude-sweep?${params}`);
    return asJson<SweepResponse>(response);
  }

  /** The CSV export is the service's own bytes, passed through verbatim. */
  async latitudeSweepCsv(scenario: string, step: number): Promise<string> {
    const params = new URLSearchParams({
      scenario,
      step: String(step),
      format: "csv",
    });
    const response = await this.fetchImpl(`${this.baseUrl}/v1/latitude-sweep?${params}`);
    if (!response.ok) throw new ServiceError(response.status, await response.text());
    return response.text();
  }
}

/** Trailing-edge debounce used for slider input (150 ms per the design). */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
