/** DOM wiring: sliders, tabs, pins, URL sync, live re-querying. */

import { ApiClient, ServiceError, debounce } from "./api.js";
import { downloadCsv, drawLatitudeChart } from "./latitude.js";
import { buildReadout, siteReadout } from "./readout.js";
import {
  PinnedScenario,
  Tab,
  UIScenarioState,
  centralGlobalPreset,
  defaultState,
  deserializeState,
  serializeState,
  validate,
} from "./state.js";
import { cellAt, drawSurface } from "./surface.js";
import { ALL_REGIMES, EvaluateResponse, SurfaceResponse } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

export class ExplorerApp {
  private state: UIScenarioState;
  private surfaceData: SurfaceResponse | null = null;
  private readonly requery = debounce(() => void this.refreshScenario(), 150);
  private readonly resurface = debounce(() => void this.refreshSurface(), 150);

  constructor(private readonly api: ApiClient) {
    this.state = window.location.search.length > 1
      ? deserializeState(window.location.search.slice(1))
      : defaultState();
  }

  start(): void {
    this.bindControls();
    this.renderControls();
    this.switchTab(this.state.tab);
    void this.refreshScenario();
  }

  private update(patch: Partial<UIScenarioState>): void {
    this.state = { ...this.state, ...patch };
    this.syncUrl();
    this.renderControls();
  }

  private syncUrl(): void {
    const query = serializeState(this.state);
    window.history.replaceState(null, "", `${window.location.pathname}?${query}`);
  }

  private bindControls(): void {
    const bindNumber = (id: string, apply: (value: number) => Partial<UIScenarioState>) => {
      const input = $<HTMLInputElement>(id);
      input.addEventListener("input", () => {
        this.update(apply(Number(input.value)));
        this.requery();
        if (id === "ctl-w") this.resurface();
      });
    };
    bindNumber("ctl-w", (w) => ({ w }));
    bindNumber("ctl-lat", (latitude) => ({ latitude }));
    bindNumber("ctl-k", (k) => ({ k }));
    bindNumber("ctl-ratio", (ratio) => ({ ratio }));
    bindNumber("ctl-capex-gen", (capexGen) => ({ pv: { ...this.state.pv, capexGen } }));
    bindNumber("ctl-capex-sto", (capexSto) => ({ pv: { ...this.state.pv, capexSto } }));
    bindNumber("ctl-estar", (estar) => ({ estar }));
    bindNumber("ctl-sweep-res", (surfaceRes) => ({ surfaceRes }));

    $<HTMLSelectElement>("ctl-mode").addEventListener("change", (event) => {
      const mode = (event.target as HTMLSelectElement).value === "latitude" ? "latitude" : "w";
      this.update({ mode });
      this.requery();
    });
    $<HTMLSelectElement>("ctl-scenario").addEventListener("change", (event) => {
      this.update({ scenario: (event.target as HTMLSelectElement).value });
      this.requery();
      void this.refreshLatitudeChart();
    });
    for (const regime of ALL_REGIMES) {
      $<HTMLInputElement>(`ctl-regime-${regime}`).addEventListener("change", (event) => {
        const checked = (event.target as HTMLInputElement).checked;
        const regimes = checked
          ? [...this.state.regimes, regime]
          : this.state.regimes.filter((r) => r !== regime);
        this.update({ regimes });
        this.requery();
      });
    }

    $<HTMLButtonElement>("btn-preset-central").addEventListener("click", () => {
      this.update({ ...centralGlobalPreset(), pins: this.state.pins, tab: this.state.tab });
      this.requery();
    });
    $<HTMLButtonElement>("btn-pin").addEventListener("click", () => this.pinCurrent());
    $<HTMLButtonElement>("btn-export").addEventListener("click", () => {
      void this.exportSweepCsv();
    });
    for (const tab of ["scenario", "surface", "latitude"] as Tab[]) {
      $<HTMLButtonElement>(`tab-${tab}`).addEventListener("click", () => this.switchTab(tab));
    }

    const surfaceCanvas = $<HTMLCanvasElement>("surface-canvas");
    surfaceCanvas.addEventListener("mousemove", (event) => {
      if (!this.surfaceData) return;
      const rect = surfaceCanvas.getBoundingClientRect();
      const hover = cellAt(
        this.surfaceData,
        (event.clientX - rect.left) / rect.width,
        (event.clientY - rect.top) / rect.height,
      );
      if (hover) {
        $("surface-hover").textContent =
          `k=${hover.k.toFixed(3)}  ratio=${hover.ratio.toFixed(3)}  ` +
          `coverage=${hover.beta.toFixed(4)}  entry ratio=${hover.entryRatio.toFixed(4)}`;
      }
    });
  }

  private renderControls(): void {
    $<HTMLInputElement>("ctl-w").value = String(this.state.w);
    $<HTMLInputElement>("ctl-lat").value = String(this.state.latitude);
    $<HTMLInputElement>("ctl-k").value = String(this.state.k);
    $<HTMLInputElement>("ctl-ratio").value = String(this.state.ratio);
    $<HTMLInputElement>("ctl-capex-gen").value = String(this.state.pv.capexGen);
    $<HTMLInputElement>("ctl-capex-sto").value = String(this.state.pv.capexSto);
    $<HTMLInputElement>("ctl-estar").value = String(this.state.estar);
    $<HTMLInputElement>("ctl-sweep-res").value = String(this.state.surfaceRes);
    $<HTMLSelectElement>("ctl-mode").value = this.state.mode;
    $<HTMLSelectElement>("ctl-scenario").value = this.state.scenario;
    for (const regime of ALL_REGIMES) {
      $<HTMLInputElement>(`ctl-regime-${regime}`).checked =
        this.state.regimes.includes(regime);
    }
    $("w-value").textContent = String(this.state.w);
    $("lat-value").textContent = String(this.state.latitude);
    $("k-value").textContent = String(this.state.k);
    $("ratio-value").textContent = String(this.state.ratio);
    document
      .querySelectorAll<HTMLElement>(".w-mode")
      .forEach((node) => (node.style.display = this.state.mode === "w" ? "" : "none"));
    document
      .querySelectorAll<HTMLElement>(".lat-mode")
      .forEach((node) => (node.style.display = this.state.mode === "latitude" ? "" : "none"));
  }

  private switchTab(tab: Tab): void {
    this.update({ tab });
    for (const name of ["scenario", "surface", "latitude"] as Tab[]) {
      $(`panel-${name}`).style.display = name === tab ? "" : "none";
      $(`tab-${name}`).classList.toggle("active", name === tab);
    }
    if (tab === "surface") void this.refreshSurface();
    if (tab === "latitude") void this.refreshLatitudeChart();
  }

  private renderReadout(response: EvaluateResponse): void {
    const table = $("readout-rows");
    table.innerHTML = "";
    for (const row of buildReadout(this.state, response)) {
      const tr = document.createElement("tr");
      for (const text of [row.regime, row.label, row.text, row.unit]) {
        const td = document.createElement("td");
        td.textContent = text;
        tr.appendChild(td);
      }
      tr.children[2].setAttribute("data-value", String(row.value));
      table.appendChild(tr);
    }
    const site = $("site-rows");
    site.innerHTML = "";
    for (const row of siteReadout(response)) {
      const tr = document.createElement("tr");
      for (const text of [row.label, row.text, row.unit]) {
        const td = document.createElement("td");
        td.textContent = text;
        tr.appendChild(td);
      }
      site.appendChild(tr);
    }
  }

  private showError(message: string): void {
    const banner = $("error-banner");
    banner.textContent = message;
    banner.style.display = message ? "" : "none";
  }

  private async refreshScenario(): Promise<void> {
    const issues = validate(this.state);
    if (issues.length > 0) {
      this.showError(issues.map((issue) => `${issue.field}: ${issue.message}`).join("; "));
      return;
    }
    try {
      const response = await this.api.evaluate(this.state);
      this.showError("");
      this.renderReadout(response);
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      const detail =
        error instanceof ServiceError ? `service error ${error.status}: ${error.message}` : String(error);
      this.showError(`${detail} - adjust inputs or retry`);
    }
  }

  private async refreshSurface(): Promise<void> {
    try {
      const surface = await this.api.surface(this.state.w, this.state.surfaceRes);
      if (surface) {
        this.surfaceData = surface;
        drawSurface($<HTMLCanvasElement>("surface-canvas"), surface);
      }
    } catch (error) {
      this.showError(String(error));
    }
  }

  private async refreshLatitudeChart(): Promise<void> {
    try {
      const sweep = await this.api.latitudeSweep(this.state.scenario, this.state.sweepStep);
      drawLatitudeChart($<HTMLCanvasElement>("latitude-canvas"), sweep);
    } catch (error) {
      this.showError(String(error));
    }
  }

  private async exportSweepCsv(): Promise<void> {
    const csv = await this.api.latitudeSweepCsv(this.state.scenario, this.state.sweepStep);
    downloadCsv(csv, `latitude_sweep_${this.state.scenario}.csv`);
  }

  private pinCurrent(): void {
    const { pins, tab, ...snapshot } = this.state;
    const pin: PinnedScenario = {
      label: `pin ${pins.length + 1}`,
      state: structuredClone(snapshot),
    };
    this.update({ pins: [...pins, pin].slice(-3) });
    void this.renderPins();
  }

  private async renderPins(): Promise<void> {
    const host = $("pins");
    host.innerHTML = "";
    for (const pin of this.state.pins) {
      const block = document.createElement("div");
      block.className = "pin";
      const title = document.createElement("h4");
      title.textContent = pin.label;
      block.appendChild(title);
      const pinState: UIScenarioState = { ...pin.state, pins: [], tab: "scenario" };
      try {
        const response = await this.api.evaluate(pinState);
        const list = document.createElement("ul");
        for (const row of buildReadout(pinState, response)) {
          const item = document.createElement("li");
          item.textContent = `${row.regime} ${row.label}: ${row.text} ${row.unit}`;
          list.appendChild(item);
        }
        block.appendChild(list);
      } catch {
        const note = document.createElement("p");
        note.textContent = "(service unreachable)";
        block.appendChild(note);
      }
      host.appendChild(block);
    }
  }
}
