"""Stateless JSON API for scenario evaluation and parameter sweeps.

Every numeric quantity is returned as {value, unit, display} so clients
can bind the display strings verbatim without doing any math or
formatting of their own. Domain violations return 400 with field-level
messages; inconsistent field combinations return 422.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from pvtrade import __version__
from pvtrade.dispatch import winter_hole_from_series
from pvtrade.geo import bundled_anchor_path, interpolate_site_params, load_anchor_csv
from pvtrade.model import (
    BaseloadBackupCost,
    PVCostInputs,
    ScenarioResult,
    SiteParams,
    TradeRegime,
    autarky_cost,
    entry_threshold_ratio,
    evaluate_site,
    excess_threshold,
    optimal_beta,
    regime_unit_cost,
)
from pvtrade.synthseries import synthetic_latitude_series
from pvtrade.synthtech import build_synthetic, load_tech_table
from pvtrade.transmission import TransmissionSpec, unit_transmission_cost

MAX_SWEEP_STEPS = 500

REGIME_NAMES = {r.value: r for r in TradeRegime}


def bundled_presets_path() -> Path:
    return Path(str(resources.files("pvtrade").joinpath("data/scenarios.json")))


class BaseloadBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    fixed_annual: float = Field(description="thousand USD per MW-year")
    variable_unit: float = Field(description="USD per MWh")


class PVBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    capex_gen: float = 500.0
    lifetime_gen: float = 30.0
    capex_sto: float = 200.0
    lifetime_sto: float = 15.0
    discount_rate: float = 0.05


class SiteBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    yield_ep: float
    ocf: float
    storage_ratio: float


class TransmissionBody(BaseModel):
    model_config = ConfigDict(extra="allow")
    # passed through to TransmissionSpec; kept open so specs stay one schema


class ScenarioRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    winter_hole: float | None = Field(default=None, alias="w")
    latitude: float | None = None
    k: float | None = None
    ratio: float | None = None
    scenario: str | None = None
    baseload: BaseloadBody | None = None
    pv: PVBody | None = None
    site: SiteBody | None = None
    estar: float | None = None
    regimes: list[str] = Field(default_factory=lambda: ["autarky"])
    transmission: dict | None = None


def _field_error(field: str, message: str):
    raise HTTPException(status_code=400, detail={"errors": [{"field": field, "message": message}]})


def quantity(value: float | None, unit: str, decimals: int = 2) -> dict | None:
    if value is None:
        return None
    return {"value": value, "unit": unit, "display": f"{value:.{decimals}f}"}


def result_body(result: ScenarioResult) -> dict:
    body = {
        "beta_star": quantity(result.beta_star, "fraction", 4),
        "unit_cost": quantity(result.unit_cost, "USD/MWh"),
        "pv_unit_cost": quantity(result.pv_unit_cost, "USD/MWh"),
    }
    if result.wtp is not None:
        body["wtp"] = quantity(result.wtp, "USD/MWh")
    if result.gains is not None:
        body["gains"] = quantity(result.gains, "USD/MWh")
    return body


class ServiceState:
    """Immutable configuration loaded at startup."""

    def __init__(self, anchors_path: str | Path | None = None, presets_path: str | Path | None = None):
        self.anchor_rows = load_anchor_csv(anchors_path or bundled_anchor_path())
        self.site_lookup = interpolate_site_params(self.anchor_rows)
        with Path(presets_path or bundled_presets_path()).open() as handle:
            presets = json.load(handle)
        self.defaults = presets.pop("defaults", {})
        self.presets = presets
        self.tech_table = load_tech_table()
        self.estar_default = float(self.defaults.get("estar_kwh_per_kwp", 1515.0))

    def baseload_for(self, name: str) -> BaseloadBackupCost:
        preset = self.presets.get(name)
        if preset is None:
            _field_error("scenario", f"unknown scenario {name!r}; known: {sorted(self.presets)}")
        return build_synthetic(self.tech_table, preset["tech_scenario"])

    @lru_cache(maxsize=64)
    def site_for_latitude(self, latitude: float, estar: float) -> SiteParams:
        series = synthetic_latitude_series(latitude)
        return SiteParams(
            winter_hole=winter_hole_from_series(series),
            latitude=latitude,
            yield_ep=series.annual_yield,
            ocf=self.site_lookup(latitude)[0],
            storage_ratio=self.site_lookup(latitude)[1],
            optimal_yield_estar=estar,
        )


def create_app(
    anchors_path: str | Path | None = None,
    presets_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    state = ServiceState(anchors_path=anchors_path, presets_path=presets_path)
    app = FastAPI(title="pvtrade scenario service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/evaluate")
    def evaluate(request: ScenarioRequest) -> dict:
        if (request.winter_hole is None) == (request.latitude is None):
            raise HTTPException(
                status_code=422,
                detail="provide exactly one of 'w' (winter_hole) and 'latitude'",
            )

        regimes = []
        for name in request.regimes:
            regime = REGIME_NAMES.get(name)
            if regime is None:
                _field_error("regimes", f"unknown regime {name!r}; known: {sorted(REGIME_NAMES)}")
            regimes.append(regime)
        if not regimes:
            _field_error("regimes", "at least one regime is required")

        if request.k is not None and not 0.0 <= request.k <= 1.0:
            _field_error("k", f"fixed-cost share must be in [0, 1], got {request.k}")
        if request.ratio is not None and request.ratio < 0:
            _field_error("ratio", f"cost ratio must be >= 0, got {request.ratio}")
        if request.winter_hole is not None and request.winter_hole < 0:
            _field_error("w", f"winter hole must be >= 0, got {request.winter_hole}")
        if request.latitude is not None and abs(request.latitude) > 55:
            _field_error("latitude", "latitude must be within +-55 degrees (model domain)")

        if request.baseload is not None:
            bb = BaseloadBackupCost(request.baseload.fixed_annual, request.baseload.variable_unit)
        elif request.scenario is not None:
            bb = state.baseload_for(request.scenario)
        elif request.k is not None:
            # dimensionless mode: costs expressed relative to C_B = 1
            bb = BaseloadBackupCost.from_unit_cost(1.0, request.k)
        else:
            bb = state.baseload_for("central")

        pv = PVCostInputs(**request.pv.model_dump()) if request.pv else PVCostInputs()
        estar = request.estar if request.estar is not None else state.estar_default

        tc = 0.0
        if request.transmission is not None:
            try:
                tc = unit_transmission_cost(TransmissionSpec(**request.transmission)).unit_cost
            except (TypeError, ValueError) as exc:
                _field_error("transmission", str(exc))

        site_fields: dict = {"optimal_yield_estar": estar}
        if request.site is not None:
            site_fields.update(request.site.model_dump())

        if request.latitude is not None:
            base_site = state.site_for_latitude(float(request.latitude), float(estar))
            site = base_site
            if request.site is not None:
                site = SiteParams(
                    winter_hole=base_site.winter_hole,
                    latitude=base_site.latitude,
                    optimal_yield_estar=estar,
                    **request.site.model_dump(),
                )
        else:
            try:
                site = SiteParams(winter_hole=float(request.winter_hole), **site_fields)
            except ValueError as exc:
                _field_error("site", str(exc))

        body: dict = {"regimes": {}}
        site_info = {
            "winter_hole": quantity(site.winter_hole, "dimensionless", 4),
            "adjustment": quantity(site.adjustment, "dimensionless", 4),
            "excess_threshold": quantity(site.excess_threshold, "fraction", 4),
        }
        if site.yield_ep is not None:
            site_info["yield_ep"] = quantity(site.yield_ep, "kWh/kWp/yr")
        body["site"] = site_info

        for regime in regimes:
            if request.ratio is not None and regime in (
                TradeRegime.AUTARKY,
                TradeRegime.NORTH_SOUTH,
            ):
                # explicit PV-to-baseload cost ratio overrides Eq.-style
                # PV costing for the seasonality-only regimes
                pv_cost = request.ratio * bb.unit_cost
                if regime is TradeRegime.AUTARKY:
                    beta = optimal_beta(site, bb, pv_cost)
                    result = ScenarioResult(
                        regime, beta, autarky_cost(beta, site, bb, pv_cost), pv_cost
                    )
                else:
                    beta = 1.0 if pv_cost <= bb.unit_cost else 0.0
                    cost = pv_cost if beta == 1.0 else bb.unit_cost
                    autarky_beta = optimal_beta(site, bb, pv_cost)
                    c_a = autarky_cost(autarky_beta, site, bb, pv_cost)
                    result = ScenarioResult(
                        regime, beta, cost, pv_cost, wtp=c_a - cost, gains=c_a - cost - tc
                    )
            else:
                try:
                    result = regime_unit_cost(site, bb, pv, regime, tc=tc)
                except ValueError as exc:
                    _field_error(regime.value, str(exc))
            body["regimes"][regime.value] = result_body(result)
        return body

    @app.get("/v1/surface")
    def surface(
        w: float = Query(..., ge=0.0),
        k_steps: int = Query(41, ge=1),
        ratio_steps: int = Query(41, ge=1),
        k_min: float = Query(0.0, ge=0.0, le=1.0),
        k_max: float = Query(1.0, ge=0.0, le=1.0),
        ratio_min: float = Query(0.05, ge=0.0),
        ratio_max: float = Query(1.5, gt=0.0),
    ) -> dict:
        if k_steps > MAX_SWEEP_STEPS or ratio_steps > MAX_SWEEP_STEPS:
            _field_error("k_steps/ratio_steps", f"step counts are capped at {MAX_SWEEP_STEPS}")
        if k_max < k_min or ratio_max < ratio_min:
            _field_error("k_min/k_max", "ranges must be non-empty")
        ks = np.linspace(k_min, k_max, k_steps)
        ratios = np.linspace(ratio_min, ratio_max, ratio_steps)
        beta = []
        for k in ks:
            bb = BaseloadBackupCost.from_unit_cost(1.0, float(k))
            site = SiteParams(winter_hole=w)
            beta.append(
                [optimal_beta(site, bb, float(ratio)) for ratio in ratios]
            )
        return {
            "w": w,
            "excess_threshold": excess_threshold(w),
            "k_values": [float(k) for k in ks],
            "ratio_values": [float(r) for r in ratios],
            "beta": beta,
            "entry_ratio_per_k": [float(entry_threshold_ratio(w, float(k))) for k in ks],
            "units": {"beta": "fraction", "ratio": "C_P/C_B", "k": "fraction"},
        }

    @lru_cache(maxsize=16)
    def _latitude_sweep(scenario: str, step: float) -> dict:
        bb = state.baseload_for(scenario)
        pv = PVCostInputs()
        lats = np.arange(-55.0, 55.0 + 1e-9, step)
        columns: dict[str, list] = {"lat": [float(l) for l in lats]}
        regimes = (
            TradeRegime.AUTARKY,
            TradeRegime.EAST_WEST,
            TradeRegime.NORTH_SOUTH,
            TradeRegime.GLOBAL,
        )
        for regime in regimes:
            columns[f"unit_cost_{regime.value}"] = []
            if regime is not TradeRegime.AUTARKY:
                columns[f"wtp_{regime.value}"] = []
        for lat in lats:
            site = state.site_for_latitude(float(lat), state.estar_default)
            results = evaluate_site(site, bb, pv, regimes)
            for regime in regimes:
                result = results[regime]
                columns[f"unit_cost_{regime.value}"].append(result.unit_cost)
                if regime is not TradeRegime.AUTARKY:
                    columns[f"wtp_{regime.value}"].append(result.wtp)
        return {
            "scenario": scenario,
            "step_deg": step,
            "units": {"unit_cost": "USD/MWh", "wtp": "USD/MWh", "lat": "degrees"},
            "columns": columns,
        }

    @app.get("/v1/latitude-sweep")
    def latitude_sweep(
        scenario: str = "central",
        step: float = Query(1.0, gt=0.0, le=30.0),
        format: str = Query("json", pattern="^(json|csv)$"),
    ):
        if scenario not in state.presets:
            _field_error("scenario", f"unknown scenario {scenario!r}; known: {sorted(state.presets)}")
        payload = _latitude_sweep(scenario, float(step))
        if format == "csv":
            columns = payload["columns"]
            names = list(columns)
            lines = [",".join(names)]
            for i in range(len(columns["lat"])):
                lines.append(",".join(f"{columns[n][i]:.6g}" for n in names))
            return Response("\n".join(lines) + "\n", media_type="text/csv")
        return payload

    @app.get("/v1/presets")
    def presets() -> dict:
        return {
            "scenarios": {
                name: {"label": preset.get("label", name)}
                for name, preset in state.presets.items()
            },
            "defaults": state.defaults,
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
