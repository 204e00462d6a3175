/** Wire types mirroring the scenario service's JSON. */

/** Every numeric quantity arrives with its unit and a ready-made display string. */
export interface Quantity {
  value: number;
  unit: string;
  display: string;
}

export interface RegimeResult {
  beta_star: Quantity;
  unit_cost: Quantity;
  pv_unit_cost: Quantity;
  wtp?: Quantity;
  gains?: Quantity;
}

export interface EvaluateResponse {
  site: Record<string, Quantity>;
  regimes: Record<string, RegimeResult>;
}

export interface SurfaceResponse {
  w: number;
  excess_threshold: number;
  k_values: number[];
  ratio_values: number[];
  beta: number[][];
  entry_ratio_per_k: number[];
  units: Record<string, string>;
}

export interface SweepColumns {
  lat: number[];
  [key: string]: number[];
}

export interface SweepResponse {
  scenario: string;
  step_deg: number;
  units: Record<string, string>;
  columns: SweepColumns;
}

export interface EvaluateRequestBody {
  w?: number;
  latitude?: number;
  k?: number;
  ratio?: number;
  scenario?: string;
  pv?: {
    capex_gen: number;
    lifetime_gen: number;
    capex_sto: number;
    lifetime_sto: number;
    discount_rate: number;
  };
  estar?: number;
  regimes: string[];
}

export const ALL_REGIMES = ["autarky", "east_west", "north_south", "global"] as const;
export type RegimeName = (typeof ALL_REGIMES)[number];

export const REGIME_LABELS: Record<RegimeName, string> = {
  autarky: "Autarky",
  east_west: "East-West trade",
  north_south: "North-South trade",
  global: "Global grid",
};
