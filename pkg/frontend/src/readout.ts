/** Pure readout construction: the panel binds service display strings
 * verbatim. No number displayed here is ever computed or formatted
 * client-side - the service is the single source of truth. */

import { UIScenarioState } from "./state.js";
import { EvaluateResponse, Quantity, REGIME_LABELS, RegimeName } from "./types.js";

export interface ReadoutRow {
  regime: string;
  label: string;
  text: string; // bound verbatim into the DOM
  value: number;
  unit: string;
}

const QUANTITY_LABELS: Record<string, string> = {
  beta_star: "optimal PV coverage",
  unit_cost: "unit cost of electricity",
  pv_unit_cost: "PV unit cost",
  wtp: "willingness to pay for transmission",
  gains: "gains from trade",
};

function row(regime: string, key: string, quantity: Quantity): ReadoutRow {
  return {
    regime,
    label: QUANTITY_LABELS[key] ?? key,
    text: quantity.display,
    value: quantity.value,
    unit: quantity.unit,
  };
}

export function buildReadout(
  state: UIScenarioState,
  response: EvaluateResponse,
): ReadoutRow[] {
  const rows: ReadoutRow[] = [];
  for (const regime of state.regimes) {
    const result = response.regimes[regime];
    if (!result) continue;
    const label = REGIME_LABELS[regime as RegimeName] ?? regime;
    rows.push(row(label, "beta_star", result.beta_star));
    rows.push(row(label, "unit_cost", result.unit_cost));
    rows.push(row(label, "pv_unit_cost", result.pv_unit_cost));
    if (result.wtp) rows.push(row(label, "wtp", result.wtp));
    if (result.gains) rows.push(row(label, "gains", result.gains));
  }
  return rows;
}

export function siteReadout(response: EvaluateResponse): ReadoutRow[] {
  return Object.entries(response.site)
    .filter(([, quantity]) => quantity != null)
    .map(([key, quantity]) => row("site", key.replace(/_/g, " "), quantity));
}
