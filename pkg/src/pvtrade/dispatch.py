"""Daily-resolution PV + storage dispatch and sizing.

Sizes the (generation, storage) pair that serves a constant demand from a
daily insolation series at minimum annualized cost. Feasibility is a
two-year state-of-charge simulation (the series tiled twice, starting at
full charge, so the initial condition cannot carry a single winter).
Sub-daily needs are invisible at daily resolution and enter as floors:
overcapacity at least 1.05 and storage at least half a day of generation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from pvtrade.model import (
    EAST_WEST_MIN_OCF,
    HALF_DAYS_PER_YEAR,
    HOURS_PER_YEAR,
    PVCostInputs,
)

DAYS_PER_YEAR = 365
MA_WINDOW_DAYS = 50

# one-way charging efficiency: 10% of stored energy is lost on the way in
CHARGE_EFFICIENCY = 0.9

GEN_GRID_POINTS = 200
STORAGE_BISECT_RTOL = 1e-6


class OutsideModelDomain(ValueError):
    """Raised for sites the model cannot price (polar night, |lat|>55)."""


@dataclass(frozen=True)
class InsolationSeries:
    """A representative year of daily potential generation, kWh/kWp/day."""

    values: np.ndarray
    latitude: float | None = None
    longitude: float | None = None
    source: str = ""

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (DAYS_PER_YEAR,):
            raise ValueError(f"series must have exactly {DAYS_PER_YEAR} daily values")
        if not np.all(np.isfinite(values)):
            raise ValueError("series values must be finite")
        if np.any(values < 0):
            raise ValueError("series values must be >= 0")
        object.__setattr__(self, "values", values)

    @property
    def annual_yield(self) -> float:
        """E_p, kWh per kWp per year."""
        return float(self.values.sum())


def representative_year(
    daily: np.ndarray,
    latitude: float | None = None,
    longitude: float | None = None,
    source: str = "",
) -> InsolationSeries:
    """Average a multi-year daily record into one day-of-year series.

    Accepts a (years, 365) array or a flat array whose length is a whole
    number of 365-day years (leap days already dropped by the caller).
    """
    daily = np.asarray(daily, dtype=float)
    if daily.ndim == 1:
        if daily.size == 0 or daily.size % DAYS_PER_YEAR != 0:
            raise ValueError(
                f"need whole years of daily data ({DAYS_PER_YEAR}-day), got {daily.size} values"
            )
        daily = daily.reshape(-1, DAYS_PER_YEAR)
    elif daily.ndim != 2 or daily.shape[1] != DAYS_PER_YEAR:
        raise ValueError(f"expected (years, {DAYS_PER_YEAR}) data, got shape {daily.shape}")
    return InsolationSeries(
        values=daily.mean(axis=0), latitude=latitude, longitude=longitude, source=source
    )


def moving_average_50(series: InsolationSeries) -> InsolationSeries:
    """Centered circular 50-day moving average.

    The even window is aligned 25 days before / 24 after the current day
    and wraps across the year boundary.
    """
    x = series.values
    before = MA_WINDOW_DAYS // 2
    after = MA_WINDOW_DAYS - before - 1
    padded = np.concatenate([x[-before:], x, x[:after]])
    csum = np.concatenate([[0.0], np.cumsum(padded)])
    smoothed = (csum[MA_WINDOW_DAYS:] - csum[:-MA_WINDOW_DAYS]) / MA_WINDOW_DAYS
    return InsolationSeries(
        values=smoothed,
        latitude=series.latitude,
        longitude=series.longitude,
        source=series.source,
    )


def winter_hole_from_series(series: InsolationSeries) -> float:
    """w = (max - min)/min of the 50-day smoothed series."""
    smoothed = moving_average_50(series).values
    low = float(smoothed.min())
    if low <= 0.0:
        raise OutsideModelDomain(
            "smoothed insolation reaches zero (polar night); winter hole undefined"
        )
    return float((smoothed.max() - low) / low)


def subseasonal_series(series: InsolationSeries) -> InsolationSeries:
    """The series with its seasonal (50-day MA) component divided out.

    Mean-preserving: the result keeps the original annual yield, so
    generation/storage sizing on it prices diurnal-plus-weather
    variability while the winter hole is priced by the coverage model.
    """
    smoothed = moving_average_50(series).values
    if smoothed.min() <= 0.0:
        raise OutsideModelDomain("cannot deseasonalize a polar-night series")
    shape = series.values / smoothed
    shape *= series.values.mean() / shape.mean()
    return InsolationSeries(
        values=shape,
        latitude=series.latitude,
        longitude=series.longitude,
        source=series.source,
    )


@dataclass(frozen=True)
class DispatchResult:
    """Two-year simulation trace; energies in kWh, SoC after each day."""

    feasible: bool
    soc: np.ndarray
    unserved: np.ndarray
    curtailed: np.ndarray
    charged: np.ndarray
    discharged: np.ndarray


def simulate_dispatch(
    series: InsolationSeries,
    gen_kwp: float,
    sto_kwh: float,
    demand_mw: float,
    charge_efficiency: float = CHARGE_EFFICIENCY,
) -> DispatchResult:
    """Serve a constant demand from PV plus storage, day by day.

    Surplus charges storage (with the one-way loss), deficit discharges
    it; anything storage cannot absorb is curtailed and anything it
    cannot cover is unserved. Runs two tiled years starting from full
    charge; feasible means no unserved energy on any day.
    """
    if gen_kwp < 0 or sto_kwh < 0:
        raise ValueError("gen_kwp and sto_kwh must be >= 0")
    if demand_mw <= 0:
        raise ValueError("demand_mw must be positive")
    if not 0.0 < charge_efficiency <= 1.0:
        raise ValueError("charge_efficiency must be in (0, 1]")

    daily_gen = np.tile(series.values * gen_kwp, 2)
    demand_kwh = demand_mw * 24_000.0
    tol = 1e-9 * demand_kwh

    n = daily_gen.size
    soc = np.empty(n)
    unserved = np.zeros(n)
    curtailed = np.zeros(n)
    charged = np.zeros(n)
    discharged = np.zeros(n)

    level = sto_kwh
    for d in range(n):
        net = daily_gen[d] - demand_kwh
        if net >= 0.0:
            stored = min(net * charge_efficiency, sto_kwh - level)
            level += stored
            charged[d] = stored
            curtailed[d] = net - stored / charge_efficiency
        else:
            draw = min(-net, level)
            level -= draw
            discharged[d] = draw
            unserved[d] = -net - draw
        soc[d] = level

    feasible = bool(unserved.max(initial=0.0) <= tol)
    return DispatchResult(
        feasible=feasible,
        soc=soc,
        unserved=unserved,
        curtailed=curtailed,
        charged=charged,
        discharged=discharged,
    )


def _feasible_vector(
    daily_per_kwp: np.ndarray,
    gen: np.ndarray,
    sto: np.ndarray,
    demand_kwh: float,
    charge_efficiency: float,
) -> np.ndarray:
    """Feasibility of many (gen, sto) candidates at once (two tiled years)."""
    level = sto.astype(float).copy()
    alive = np.ones(gen.shape, dtype=bool)
    tol = 1e-9 * demand_kwh
    for value in np.tile(daily_per_kwp, 2):
        net = gen * value - demand_kwh
        surplus = np.maximum(net, 0.0)
        deficit = np.maximum(-net, 0.0)
        level = np.minimum(level + surplus * charge_efficiency, sto)
        draw = np.minimum(deficit, level)
        level -= draw
        alive &= deficit - draw <= tol
        if not alive.any():
            break
    return alive


@dataclass(frozen=True)
class IsolinePoint:
    """One feasible (generation, storage) sizing and its annual cost.

    Feasibility is monotone: raising either capacity keeps a feasible
    point feasible, so the frontier lists minimal storage per generation.
    """

    gen_kwp: float
    sto_kwh: float
    annual_cost_usd: float
    feasible: bool = True


@dataclass(frozen=True)
class GSOptimum:
    """Cost-minimizing generation/storage sizing for one site."""

    ocf: float
    s_over_g: float
    gen_kwp: float
    sto_kwh: float
    annual_cost_usd: float
    unit_cost_usd_per_mwh: float
    gen_min_kwp: float
    frontier: list[IsolinePoint] = field(default_factory=list, repr=False)


def _frontier_costs(
    daily: np.ndarray,
    gen: np.ndarray,
    e_p: float,
    pv: PVCostInputs,
    demand_kwh: float,
    charge_efficiency: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Minimal feasible storage (floored) and cost per generation point."""
    sto_floor = gen * e_p / HALF_DAYS_PER_YEAR
    lo = np.zeros_like(gen)
    hi = np.full_like(gen, 2.0 * DAYS_PER_YEAR * demand_kwh)

    feasible_at_hi = _feasible_vector(daily, gen, hi, demand_kwh, charge_efficiency)
    gen = gen[feasible_at_hi]
    if gen.size == 0:
        return gen, gen, gen
    sto_floor = sto_floor[feasible_at_hi]
    lo = lo[feasible_at_hi]
    hi = hi[feasible_at_hi]

    atol = 1e-9 * demand_kwh
    while np.any(hi - lo > STORAGE_BISECT_RTOL * hi + atol):
        mid = 0.5 * (lo + hi)
        ok = _feasible_vector(daily, gen, mid, demand_kwh, charge_efficiency)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)

    sto = np.maximum(hi, sto_floor)
    return gen, sto, pv.aic_gen * gen + pv.aic_sto * sto


def optimize_gs(
    series: InsolationSeries,
    pv: PVCostInputs,
    demand_mw: float = 1.0,
    charge_efficiency: float = CHARGE_EFFICIENCY,
    gen_points: int = GEN_GRID_POINTS,
) -> GSOptimum:
    """Find the cheapest feasible (generation, storage) pair.

    Sweeps a log-spaced generation grid from the variability-free minimum
    up to (w+2) times it, bisects the minimal feasible storage for every
    grid point in parallel, prices each frontier point at the annualized
    investment costs, then refines around the winner so the resolution
    exceeds any coarse acceptance grid. The diurnal floors (OCF >= 1.05,
    S/G >= E_p/730) apply throughout.
    """
    e_p = series.annual_yield
    if e_p <= 0:
        raise OutsideModelDomain("series has no energy; cannot size generation")
    demand_kwh = demand_mw * 24_000.0
    gen_min = demand_mw * HOURS_PER_YEAR * 1000.0 / e_p

    w = winter_hole_from_series(series)
    gen_lo = gen_min * EAST_WEST_MIN_OCF
    gen_hi = gen_min * (w + 2.0)
    if gen_hi <= gen_lo:
        gen_hi = gen_lo * 1.5
    grid = np.geomspace(gen_lo, gen_hi, gen_points)

    gen, sto, cost = _frontier_costs(
        series.values, grid, e_p, pv, demand_kwh, charge_efficiency
    )
    if gen.size == 0:
        raise ValueError("no feasible sizing found on the search grid")
    frontier = [
        IsolinePoint(float(g), float(s), float(c)) for g, s, c in zip(gen, sto, cost)
    ]
    best = int(np.argmin(cost))
    best_point = (gen[best], sto[best], cost[best])

    # local refinement: re-grid between the winner's neighbors, never
    # dropping below the overcapacity floor
    lo_gen = gen[best - 1] if best > 0 else gen_lo
    hi_gen = gen[best + 1] if best < gen.size - 1 else gen[best] * 1.02
    for _ in range(2):
        local = np.geomspace(max(lo_gen, gen_lo), hi_gen, 25)
        lgen, lsto, lcost = _frontier_costs(
            series.values, local, e_p, pv, demand_kwh, charge_efficiency
        )
        if lgen.size == 0:
            break
        li = int(np.argmin(lcost))
        if lcost[li] < best_point[2]:
            best_point = (lgen[li], lsto[li], lcost[li])
        lo_gen = lgen[li - 1] if li > 0 else lgen[li] * 0.999
        hi_gen = lgen[li + 1] if li < lgen.size - 1 else lgen[li] * 1.001

    best_gen, best_sto, best_cost = (float(v) for v in best_point)
    annual_energy_mwh = demand_mw * HOURS_PER_YEAR
    return GSOptimum(
        ocf=best_gen / gen_min,
        s_over_g=best_sto / best_gen,
        gen_kwp=best_gen,
        sto_kwh=best_sto,
        annual_cost_usd=best_cost,
        unit_cost_usd_per_mwh=best_cost / annual_energy_mwh,
        gen_min_kwp=float(gen_min),
        frontier=frontier,
    )
