/** Latitude curves per regime with willingness-to-pay band shading. */

import { SweepResponse } from "./types.js";

export const REGIME_COLORS: Record<string, string> = {
  autarky: "#444444",
  east_west: "#d95f02",
  north_south: "#1b9e77",
  global: "#7570b3",
};

export interface BandGeometry {
  regime: string;
  upper: number[]; // autarky costs
  lower: number[]; // trade costs
}

/** The shaded band between a trade line and the autarky line is the
 * willingness to pay at every latitude, by construction. */
export function wtpBands(sweep: SweepResponse): BandGeometry[] {
  const autarky = sweep.columns.unit_cost_autarky;
  const bands: BandGeometry[] = [];
  for (const regime of ["east_west", "north_south", "global"]) {
    const lower = sweep.columns[`unit_cost_${regime}`];
    if (lower) bands.push({ regime, upper: autarky, lower });
  }
  return bands;
}

interface Scale {
  x: (lat: number) => number;
  y: (cost: number) => number;
}

function makeScale(sweep: SweepResponse, width: number, height: number): Scale {
  const lats = sweep.columns.lat;
  const costs = Object.entries(sweep.columns)
    .filter(([name]) => name.startsWith("unit_cost_"))
    .flatMap(([, values]) => values);
  const latMin = lats[0];
  const latMax = lats[lats.length - 1];
  const costMax = Math.max(...costs) * 1.05;
  const pad = 34;
  return {
    x: (lat) => pad + ((lat - latMin) / (latMax - latMin)) * (width - 2 * pad),
    y: (cost) => height - 22 - (cost / costMax) * (height - 2 * 22),
  };
}

export function drawLatitudeChart(canvas: HTMLCanvasElement, sweep: SweepResponse): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const scale = makeScale(sweep, width, height);
  const lats = sweep.columns.lat;

  for (const band of wtpBands(sweep)) {
    ctx.beginPath();
    lats.forEach((lat, i) => {
      const x = scale.x(lat);
      const y = scale.y(band.lower[i]);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    for (let i = lats.length - 1; i >= 0; i--) {
      ctx.lineTo(scale.x(lats[i]), scale.y(band.upper[i]));
    }
    ctx.closePath();
    ctx.fillStyle = REGIME_COLORS[band.regime] + "14";
    ctx.fill();
  }

  for (const [name, values] of Object.entries(sweep.columns)) {
    if (!name.startsWith("unit_cost_")) continue;
    const regime = name.slice("unit_cost_".length);
    ctx.strokeStyle = REGIME_COLORS[regime] ?? "#999";
    ctx.lineWidth = 1.8;
    ctx.beginPath();
    lats.forEach((lat, i) => {
      const x = scale.x(lat);
      const y = scale.y(values[i]);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }

  ctx.fillStyle = "#666";
  ctx.font = "11px system-ui";
  for (const lat of [-40, -20, 0, 20, 40]) {
    ctx.fillText(String(lat), scale.x(lat) - 8, height - 6);
  }
}

/** Browser download of the service's CSV bytes, passed through verbatim. */
export function downloadCsv(content: string, filename: string): void {
  const blob = new Blob([content], { type: "text/csv" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}
