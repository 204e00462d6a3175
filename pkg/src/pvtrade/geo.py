"""Gridded evaluation pipeline: ingest, evaluate, aggregate, write.

Feeds per-cell insolation series through the coverage model for every
trade regime, either from CSV data or from the synthetic latitude
generator, and writes plot-ready delimited outputs plus a reproducibility
manifest.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from pvtrade import __version__
from pvtrade.dispatch import (
    DAYS_PER_YEAR,
    InsolationSeries,
    OutsideModelDomain,
    optimize_gs,
    winter_hole_from_series,
)
from pvtrade.model import (
    BaseloadBackupCost,
    PVCostInputs,
    ScenarioResult,
    SiteParams,
    TradeRegime,
    evaluate_site,
)
from pvtrade.synthseries import (
    DEFAULT_PARAMS,
    SyntheticSeriesParams,
    synthetic_latitude_series,
    synthetic_subseasonal_series,
)
from pvtrade.synthtech import build_synthetic, load_tech_table

LATITUDE_DOMAIN_DEG = 55.0
SYNTHETIC_ESTAR = 1515.0  # kWh/kWp, optimal-siting yield for synthetic data

REGIME_ORDER = (
    TradeRegime.AUTARKY,
    TradeRegime.EAST_WEST,
    TradeRegime.NORTH_SOUTH,
    TradeRegime.GLOBAL,
)

SCENARIO_TO_TECH_COLUMN = {"high": "max", "median": "mean", "low": "min", "central": "max"}


@dataclass(frozen=True)
class GridCell:
    """One evaluation cell: location, its series and annual yield."""

    lat: float
    lon: float
    series: InsolationSeries
    yield_ep: float

    @property
    def in_domain(self) -> bool:
        return abs(self.lat) <= LATITUDE_DOMAIN_DEG


@dataclass(frozen=True)
class CellRejection:
    lat: float
    lon: float
    reason: str


@dataclass(frozen=True)
class CellResult:
    lat: float
    lon: float
    results: dict[TradeRegime, ScenarioResult]


@dataclass(frozen=True)
class RunConfig:
    """Inputs of one evaluation run; serializable for the manifest."""

    scenario: str = "high"
    pv: PVCostInputs = field(default_factory=PVCostInputs)
    regimes: tuple[TradeRegime, ...] = REGIME_ORDER
    estar: float | None = None  # None: dataset quantile / synthetic default
    estar_quantile: float = 0.25
    transmission_cost: float = 0.0
    resolution_deg: float = 5.0
    lat_max: float = LATITUDE_DOMAIN_DEG
    anchors_path: str | None = None  # None: bundled table
    performance_ratio: float = 0.8  # GHI -> potential generation, loaded data
    workers: int = 1
    synthetic: bool = True

    def baseload(self) -> BaseloadBackupCost:
        column = SCENARIO_TO_TECH_COLUMN.get(self.scenario)
        if column is None:
            raise ValueError(
                f"unknown scenario {self.scenario!r}; expected one of "
                f"{sorted(SCENARIO_TO_TECH_COLUMN)}"
            )
        return build_synthetic(load_tech_table(), column)

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "pv": {
                "capex_gen": self.pv.capex_gen,
                "lifetime_gen": self.pv.lifetime_gen,
                "capex_sto": self.pv.capex_sto,
                "lifetime_sto": self.pv.lifetime_sto,
                "discount_rate": self.pv.discount_rate,
            },
            "regimes": [r.value for r in self.regimes],
            "estar": self.estar,
            "estar_quantile": self.estar_quantile,
            "transmission_cost": self.transmission_cost,
            "resolution_deg": self.resolution_deg,
            "lat_max": self.lat_max,
            "anchors_path": self.anchors_path,
            "performance_ratio": self.performance_ratio,
            "synthetic": self.synthetic,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        known = {}
        if "scenario" in raw:
            known["scenario"] = raw["scenario"]
        if "pv" in raw:
            known["pv"] = PVCostInputs(**raw["pv"])
        if "regimes" in raw:
            known["regimes"] = tuple(TradeRegime(r) for r in raw["regimes"])
        for name in (
            "estar",
            "estar_quantile",
            "transmission_cost",
            "resolution_deg",
            "lat_max",
            "anchors_path",
            "performance_ratio",
            "workers",
            "synthetic",
        ):
            if name in raw:
                known[name] = raw[name]
        unknown = set(raw) - set(known) - {"pv", "regimes", "scenario"}
        if unknown:
            raise ValueError(f"unknown run-config fields: {', '.join(sorted(unknown))}")
        return cls(**known)


@dataclass(frozen=True)
class EvaluationRun:
    config: RunConfig
    estar: float
    cells: list[CellResult]
    rejections: list[CellRejection]


# --- anchors: latitude -> (OCF, S/G) ---------------------------------------


def bundled_anchor_path() -> Path:
    return Path(str(resources.files("pvtrade").joinpath("data/anchors.csv")))


def load_anchor_csv(path: str | Path) -> list[tuple[float, float, float]]:
    """Read (lat, ocf, s_over_g) anchor rows, sorted by latitude."""
    rows: list[tuple[float, float, float]] = []
    with Path(path).open(newline="") as handle:
        lines = (line for line in handle if not line.lstrip().startswith("#"))
        reader = csv.DictReader(lines)
        for row in reader:
            rows.append((float(row["lat"]), float(row["ocf"]), float(row["s_over_g"])))
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two anchor rows")
    rows.sort(key=lambda r: r[0])
    return rows


def write_anchor_csv(path: str | Path, rows: list[tuple[float, float, float]]) -> None:
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lat", "ocf", "s_over_g"])
        for lat, ocf, sg in rows:
            writer.writerow([repr(float(lat)), repr(float(ocf)), repr(float(sg))])


def interpolate_site_params(anchors: list[tuple[float, float, float]]):
    """Piecewise-linear (OCF, S/G) interpolation over latitude.

    Clamped at the end anchors; duplicate anchor latitudes are rejected.
    """
    lats = np.array([a[0] for a in anchors], dtype=float)
    if np.unique(lats).size != lats.size:
        raise ValueError("anchor latitudes must be distinct")
    order = np.argsort(lats)
    lats = lats[order]
    ocfs = np.array([a[1] for a in anchors], dtype=float)[order]
    sgs = np.array([a[2] for a in anchors], dtype=float)[order]

    def lookup(lat: float) -> tuple[float, float]:
        return (
            float(np.interp(lat, lats, ocfs)),
            float(np.interp(lat, lats, sgs)),
        )

    return lookup


def generate_anchor_table(
    lat_step: float = 2.5,
    lat_max: float = 60.0,
    pv: PVCostInputs | None = None,
    params: SyntheticSeriesParams = DEFAULT_PARAMS,
) -> list[tuple[float, float, float]]:
    """Size (OCF, S/G) on the synthetic subseasonal series per latitude.

    Positive latitudes are computed and mirrored, keeping the table
    exactly hemisphere-symmetric.
    """
    pv = pv or PVCostInputs()
    rows: list[tuple[float, float, float]] = []
    lat = 0.0
    while lat <= lat_max + 1e-9:
        opt = optimize_gs(synthetic_subseasonal_series(lat, params), pv)
        rows.append((lat, opt.ocf, opt.s_over_g))
        lat += lat_step
    mirrored = [(-lat, ocf, sg) for lat, ocf, sg in rows if lat > 0]
    return sorted(mirrored + rows, key=lambda r: r[0])


# --- data ingestion ---------------------------------------------------------


def load_yield_csv(path: str | Path) -> dict[tuple[float, float], float]:
    """Read lat,lon,kwh_per_kwp_year rows."""
    yields: dict[tuple[float, float], float] = {}
    with Path(path).open(newline="") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            yields[(float(row["lat"]), float(row["lon"]))] = float(
                row["kwh_per_kwp_year"]
            )
    return yields


def load_insolation_csv(
    path: str | Path,
    yield_csv: str | Path | None = None,
    performance_ratio: float = 0.8,
) -> tuple[list[GridCell], list[CellRejection]]:
    """Group daily GHI rows into validated cells.

    Expects columns lat,lon,day,ghi_kwh_m2_day (legacy name ghi accepted);
    day runs 1..365. Cells with missing or duplicate days are rejected
    with a report instead of aborting the load. The annual yield comes
    from the yield CSV when given, otherwise from the GHI sum scaled by
    the performance ratio.
    """
    path = Path(path)
    per_cell: dict[tuple[float, float], dict[int, float]] = {}
    rejections: list[CellRejection] = []
    bad_cells: set[tuple[float, float]] = set()

    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        ghi_col = "ghi_kwh_m2_day" if "ghi_kwh_m2_day" in reader.fieldnames else "ghi"
        required = {"lat", "lon", "day", ghi_col}
        if not required.issubset(reader.fieldnames):
            raise ValueError(f"{path}: need columns lat,lon,day,ghi_kwh_m2_day")
        for line_no, row in enumerate(reader, start=2):
            try:
                key = (float(row["lat"]), float(row["lon"]))
                day = int(row["day"])
                value = float(row[ghi_col])
            except (TypeError, ValueError):
                rejections.append(
                    CellRejection(math.nan, math.nan, f"malformed row at line {line_no}")
                )
                continue
            if not 1 <= day <= DAYS_PER_YEAR:
                bad_cells.add(key)
                rejections.append(CellRejection(*key, f"day {day} out of range"))
                continue
            days = per_cell.setdefault(key, {})
            if day in days:
                bad_cells.add(key)
                rejections.append(CellRejection(*key, f"duplicate day {day}"))
                continue
            days[day] = value

    yields = load_yield_csv(yield_csv) if yield_csv else {}
    cells: list[GridCell] = []
    for key in sorted(per_cell):
        if key in bad_cells:
            continue
        days = per_cell[key]
        if len(days) != DAYS_PER_YEAR:
            missing = sorted(set(range(1, DAYS_PER_YEAR + 1)) - set(days))
            rejections.append(
                CellRejection(*key, f"missing days (first: {missing[0]}, n={len(missing)})")
            )
            continue
        values = np.array([days[d] for d in range(1, DAYS_PER_YEAR + 1)])
        series = InsolationSeries(values=values, latitude=key[0], longitude=key[1], source=str(path))
        yield_ep = yields.get(key, float(values.sum()) * performance_ratio)
        cells.append(GridCell(lat=key[0], lon=key[1], series=series, yield_ep=yield_ep))
    return cells, rejections


def write_insolation_csv(path: str | Path, cells: list[GridCell]) -> None:
    """Write cells back out; float text round-trips bit-identically."""
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lat", "lon", "day", "ghi_kwh_m2_day"])
        for cell in sorted(cells, key=lambda c: (c.lat, c.lon)):
            for day, value in enumerate(cell.series.values, start=1):
                writer.writerow([repr(cell.lat), repr(cell.lon), day, repr(float(value))])


def synthetic_grid(
    resolution_deg: float = 5.0,
    lat_max: float = LATITUDE_DOMAIN_DEG,
    lon_step: float | None = None,
    params: SyntheticSeriesParams = DEFAULT_PARAMS,
) -> list[GridCell]:
    """Cells on a regular grid, series from the synthetic generator."""
    lon_step = lon_step or resolution_deg
    lats = np.arange(-lat_max, lat_max + 1e-9, resolution_deg)
    lons = np.arange(-180.0, 180.0 - 1e-9, lon_step)
    series_per_lat = {
        float(lat): synthetic_latitude_series(float(lat), params) for lat in lats
    }
    cells = []
    for lat in lats:
        series = series_per_lat[float(lat)]
        yield_ep = series.annual_yield
        for lon in lons:
            cells.append(
                GridCell(lat=float(lat), lon=float(lon), series=series, yield_ep=yield_ep)
            )
    return cells


# --- evaluation -------------------------------------------------------------


def _evaluate_one(
    task: tuple[SiteParams, BaseloadBackupCost, PVCostInputs, tuple[TradeRegime, ...], float, float, float],
) -> CellResult:
    site, bb, pv, regimes, tc, lat, lon = task
    return CellResult(lat=lat, lon=lon, results=evaluate_site(site, bb, pv, regimes, tc=tc))


def evaluate_grid(cells: list[GridCell], config: RunConfig) -> EvaluationRun:
    """Per-cell, per-regime evaluation; deterministic for any worker count.

    Cells outside the latitude domain or with polar-night series become
    rejection records, never run failures.
    """
    bb = config.baseload()
    anchor_rows = load_anchor_csv(config.anchors_path or bundled_anchor_path())
    lookup = interpolate_site_params(anchor_rows)

    in_domain: list[GridCell] = []
    rejections: list[CellRejection] = []
    for cell in sorted(cells, key=lambda c: (c.lat, c.lon)):
        if not cell.in_domain:
            rejections.append(
                CellRejection(cell.lat, cell.lon, f"|lat| > {LATITUDE_DOMAIN_DEG} (outside model domain)")
            )
        else:
            in_domain.append(cell)

    if config.estar is not None:
        estar = config.estar
    elif config.synthetic or not in_domain:
        estar = SYNTHETIC_ESTAR
    else:
        estar = float(np.quantile([c.yield_ep for c in in_domain], config.estar_quantile))

    tasks = []
    for cell in in_domain:
        try:
            w = winter_hole_from_series(cell.series)
        except OutsideModelDomain as exc:
            rejections.append(CellRejection(cell.lat, cell.lon, str(exc)))
            continue
        ocf, sg = lookup(cell.lat)
        site = SiteParams(
            winter_hole=w,
            latitude=cell.lat,
            yield_ep=cell.yield_ep,
            ocf=ocf,
            storage_ratio=sg,
            optimal_yield_estar=estar,
        )
        tasks.append((site, bb, config.pv, tuple(config.regimes), config.transmission_cost, cell.lat, cell.lon))

    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunk = max(1, len(tasks) // (config.workers * 4))
            results = list(pool.map(_evaluate_one, tasks, chunksize=chunk))
    else:
        results = [_evaluate_one(task) for task in tasks]

    results.sort(key=lambda r: (r.lat, r.lon))
    return EvaluationRun(config=config, estar=estar, cells=results, rejections=rejections)


def latitude_profile(run: EvaluationRun) -> list[dict]:
    """Per-degree latitude band means of unit cost and WTP per regime."""
    bands: dict[int, list[CellResult]] = {}
    for cell in run.cells:
        bands.setdefault(int(math.floor(cell.lat)), []).append(cell)
    rows = []
    for band in sorted(bands):
        members = bands[band]
        row: dict = {"lat": band, "cells": len(members)}
        for regime in run.config.regimes:
            costs = [m.results[regime].unit_cost for m in members]
            row[f"unit_cost_{regime.value}"] = sum(costs) / len(costs)
            wtps = [m.results[regime].wtp for m in members if m.results[regime].wtp is not None]
            if wtps:
                row[f"wtp_{regime.value}"] = sum(wtps) / len(wtps)
        rows.append(row)
    return rows


# --- outputs ----------------------------------------------------------------


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def write_outputs(run: EvaluationRun, outdir: str | Path) -> dict[str, Path]:
    """Write per-regime rasters, the latitude profile and a manifest.

    Returns the paths written, keyed by a short label. Values are decimal
    text at six significant digits; identical runs produce byte-identical
    files and the same manifest hash.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    for regime in run.config.regimes:
        path = outdir / f"raster_{regime.value}.csv"
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["lat", "lon", "beta", "unit_cost", "wtp"])
            for cell in run.cells:
                result = cell.results[regime]
                writer.writerow(
                    [
                        _fmt(cell.lat),
                        _fmt(cell.lon),
                        _fmt(result.beta_star),
                        _fmt(result.unit_cost),
                        _fmt(result.wtp),
                    ]
                )
        written[f"raster_{regime.value}"] = path

    profile_path = outdir / "latitude_profile.csv"
    rows = latitude_profile(run)
    columns = ["lat", "cells"]
    for regime in run.config.regimes:
        columns.append(f"unit_cost_{regime.value}")
    for regime in run.config.regimes:
        if regime is not TradeRegime.AUTARKY:
            columns.append(f"wtp_{regime.value}")
    with profile_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                [row["lat"], row["cells"]]
                + [_fmt(row.get(c)) for c in columns[2:]]
            )
    written["latitude_profile"] = profile_path

    if run.rejections:
        rejects_path = outdir / "rejections.csv"
        with rejects_path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["lat", "lon", "reason"])
            for rejection in run.rejections:
                writer.writerow([_fmt(rejection.lat), _fmt(rejection.lon), rejection.reason])
        written["rejections"] = rejects_path

    manifest_body = {
        "config": run.config.as_dict(),
        "estar": run.estar,
        "cells_evaluated": len(run.cells),
        "cells_rejected": len(run.rejections),
        "version": __version__,
        "outputs": {
            name: hashlib.sha256(path.read_bytes()).hexdigest()
            for name, path in sorted(written.items())
        },
    }
    manifest_body["manifest_hash"] = hashlib.sha256(
        json.dumps(manifest_body, sort_keys=True).encode()
    ).hexdigest()
    manifest_path = outdir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest_body, sort_keys=True, indent=2) + "\n")
    written["manifest"] = manifest_path
    return written
