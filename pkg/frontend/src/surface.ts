/** Canvas heatmap of the optimal-coverage surface over (k, cost ratio). */

import { SurfaceResponse } from "./types.js";

export interface SurfaceHover {
  k: number;
  ratio: number;
  beta: number;
  entryRatio: number;
}

/** Viridis-ish ramp; input clamped to [0, 1]. */
export function coverageColor(beta: number): string {
  const t = Math.min(1, Math.max(0, beta));
  const stops: [number, [number, number, number]][] = [
    [0.0, [68, 1, 84]],
    [0.25, [59, 82, 139]],
    [0.5, [33, 145, 140]],
    [0.75, [94, 201, 98]],
    [1.0, [253, 231, 37]],
  ];
  for (let i = 1; i < stops.length; i++) {
    const [t1, c1] = stops[i];
    const [t0, c0] = stops[i - 1];
    if (t <= t1) {
      const f = (t - t0) / (t1 - t0);
      const mix = c0.map((v, j) => Math.round(v + f * (c1[j] - v)));
      return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
    }
  }
  return "rgb(253,231,37)";
}

/** Nearest grid cell for a cursor position in plot-fraction coordinates. */
export function cellAt(
  surface: SurfaceResponse,
  xFrac: number,
  yFrac: number,
): SurfaceHover | null {
  if (xFrac < 0 || xFrac > 1 || yFrac < 0 || yFrac > 1) return null;
  const col = Math.min(
    surface.ratio_values.length - 1,
    Math.round(xFrac * (surface.ratio_values.length - 1)),
  );
  const rowIndex = Math.min(
    surface.k_values.length - 1,
    Math.round((1 - yFrac) * (surface.k_values.length - 1)),
  );
  return {
    k: surface.k_values[rowIndex],
    ratio: surface.ratio_values[col],
    beta: surface.beta[rowIndex][col],
    entryRatio: surface.entry_ratio_per_k[rowIndex],
  };
}

export function drawSurface(canvas: HTMLCanvasElement, surface: SurfaceResponse): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const rows = surface.k_values.length;
  const cols = surface.ratio_values.length;
  const cellW = width / cols;
  const cellH = height / rows;
  for (let i = 0; i < rows; i++) {
    const y = height - (i + 1) * cellH; // k grows upward
    for (let j = 0; j < cols; j++) {
      ctx.fillStyle = coverageColor(surface.beta[i][j]);
      ctx.fillRect(j * cellW, y, Math.ceil(cellW), Math.ceil(cellH));
    }
  }
  // entry-threshold cliff
  ctx.strokeStyle = "rgba(255,255,255,0.9)";
  ctx.lineWidth = 1.5;
  ctx.setLineDash([6, 4]);
  ctx.beginPath();
  const rMin = surface.ratio_values[0];
  const rMax = surface.ratio_values[cols - 1];
  surface.entry_ratio_per_k.forEach((ratio, i) => {
    const x = ((ratio - rMin) / (rMax - rMin)) * width;
    const y = height - ((i + 0.5) / rows) * height;
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
  ctx.setLineDash([]);
}
