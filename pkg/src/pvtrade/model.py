"""Closed-form electricity-cost model.

Prices a two-technology system (subseasonally dispatchable PV vs. a
dispatchable baseload/backup mix) as a function of PV coverage, and
compares four trade regimes: autarky, North-South (seasonal offset),
East-West (diurnal offset) and a global grid (both offsets plus optimal
siting, no storage).

Unit conventions, used throughout the package:

* baseload fixed cost       f_B   thousand USD per MW-year (as tabulated)
* baseload variable cost    v_B   USD per MWh
* PV / storage capex              USD per kWp, USD per kWh
* annualized investment     AIC   USD per kWp-year, USD per kWh-year
* site yield                E_p   kWh per kWp per year
* every cost this module returns  USD per MWh consumed

The per-MW-year fixed cost converts to USD/MWh by dividing by 8760 h at
full utilization, which makes the piecewise coverage-cost function
dimensionally coherent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

HOURS_PER_YEAR = 8760.0

# Diurnal minima for East-West trade: overcapacity of 1.05 (equal amount
# stored for night consumption at 10% storage loss) and storage of half a
# day of generation, E_p/730 kWh per kWp.
EAST_WEST_MIN_OCF = 1.05
HALF_DAYS_PER_YEAR = 730.0


class TradeRegime(enum.Enum):
    """Electricity trade configuration under evaluation."""

    AUTARKY = "autarky"
    NORTH_SOUTH = "north_south"
    EAST_WEST = "east_west"
    GLOBAL = "global"


TRADE_REGIMES = (
    TradeRegime.NORTH_SOUTH,
    TradeRegime.EAST_WEST,
    TradeRegime.GLOBAL,
)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def capital_recovery_factor(rate: float, years: float) -> float:
    """CRF(r, n) = r / (1 - (1+r)^-n); the r->0 limit is 1/n."""
    rate = _require_finite("rate", rate)
    years = _require_finite("years", years)
    if years <= 0:
        raise ValueError(f"years must be positive, got {years}")
    if rate < 0:
        raise ValueError(f"rate must be non-negative, got {rate}")
    if rate == 0.0:
        return 1.0 / years
    return rate / (1.0 - (1.0 + rate) ** (-years))


@dataclass(frozen=True)
class BaseloadBackupCost:
    """Cost structure of the dispatchable baseload/backup technology.

    fixed_annual: thousand USD per MW-year (f_B).
    variable_unit: USD per MWh (v_B).
    """

    fixed_annual: float
    variable_unit: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.fixed_annual) and self.fixed_annual >= 0):
            raise ValueError(f"fixed_annual must be >= 0, got {self.fixed_annual}")
        if not (math.isfinite(self.variable_unit) and self.variable_unit >= 0):
            raise ValueError(f"variable_unit must be >= 0, got {self.variable_unit}")

    @property
    def fixed_per_mwh(self) -> float:
        """Fixed cost expressed per MWh at year-round full utilization."""
        return self.fixed_annual * 1000.0 / HOURS_PER_YEAR

    @property
    def unit_cost(self) -> float:
        """C_B in USD/MWh: fixed (converted) plus variable."""
        return self.fixed_per_mwh + self.variable_unit

    @property
    def fixed_share(self) -> float:
        """k = f_B / C_B under the per-MWh convention, in [0, 1]."""
        total = self.unit_cost
        if total == 0.0:
            return 0.0
        return self.fixed_per_mwh / total

    @classmethod
    def from_unit_cost(cls, unit_cost: float, fixed_share: float) -> "BaseloadBackupCost":
        """Build from (C_B, k) in USD/MWh terms; handy for ratio-space work."""
        if not (0.0 <= fixed_share <= 1.0):
            raise ValueError(f"fixed_share must be in [0, 1], got {fixed_share}")
        if unit_cost < 0:
            raise ValueError(f"unit_cost must be >= 0, got {unit_cost}")
        fixed_mwh = unit_cost * fixed_share
        return cls(
            fixed_annual=fixed_mwh * HOURS_PER_YEAR / 1000.0,
            variable_unit=unit_cost * (1.0 - fixed_share),
        )


@dataclass(frozen=True)
class PVCostInputs:
    """PV generation and storage investment costs.

    capex_gen USD/kWp, capex_sto USD/kWh, lifetimes in years,
    discount_rate as a fraction per year.
    """

    capex_gen: float = 500.0
    lifetime_gen: float = 30.0
    capex_sto: float = 200.0
    lifetime_sto: float = 15.0
    discount_rate: float = 0.05

    def __post_init__(self) -> None:
        for name in ("capex_gen", "lifetime_gen", "capex_sto", "lifetime_sto"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value}")
        if not (math.isfinite(self.discount_rate) and self.discount_rate >= 0):
            raise ValueError(f"discount_rate must be >= 0, got {self.discount_rate}")

    @property
    def aic_gen(self) -> float:
        """Annualized generation investment cost, USD per kWp-year."""
        return self.capex_gen * capital_recovery_factor(self.discount_rate, self.lifetime_gen)

    @property
    def aic_sto(self) -> float:
        """Annualized storage investment cost, USD per kWh-year."""
        return self.capex_sto * capital_recovery_factor(self.discount_rate, self.lifetime_sto)


@dataclass(frozen=True)
class SiteParams:
    """One location's PV characteristics.

    Only winter_hole is always required; the remaining fields are checked
    when an operation actually needs them (e.g. East-West costing needs
    ocf, storage_ratio and yield_ep populated).
    """

    winter_hole: float
    latitude: float | None = None
    yield_ep: float | None = None
    ocf: float | None = None
    storage_ratio: float | None = None
    optimal_yield_estar: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.winter_hole) and self.winter_hole >= 0):
            raise ValueError(f"winter_hole must be >= 0 and finite, got {self.winter_hole}")
        if self.yield_ep is not None and not (math.isfinite(self.yield_ep) and self.yield_ep > 0):
            raise ValueError(f"yield_ep must be positive, got {self.yield_ep}")
        if self.ocf is not None and self.ocf < 1.0:
            raise ValueError(f"ocf must be >= 1, got {self.ocf}")
        if self.storage_ratio is not None and self.storage_ratio < 0:
            raise ValueError(f"storage_ratio must be >= 0, got {self.storage_ratio}")
        if self.optimal_yield_estar is not None and self.optimal_yield_estar <= 0:
            raise ValueError(f"optimal_yield_estar must be positive, got {self.optimal_yield_estar}")

    @property
    def adjustment(self) -> float:
        """a = w/(w+1), the backup share needed to fill the winter hole."""
        return adjustment_factor(self.winter_hole)

    @property
    def excess_threshold(self) -> float:
        """e = (w+2)/(2(w+1)), coverage where summer output meets demand."""
        return excess_threshold(self.winter_hole)

    def _need(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValueError(f"site is missing required fields: {', '.join(missing)}")


@dataclass(frozen=True)
class ScenarioResult:
    """Per-regime evaluation outcome, costs in USD/MWh."""

    regime: TradeRegime
    beta_star: float
    unit_cost: float
    pv_unit_cost: float
    wtp: float | None = None
    gains: float | None = None


def adjustment_factor(w: float) -> float:
    """Backup capacity fraction a = w/(w+1) filling the winter hole."""
    w = _require_finite("winter hole", w)
    if w < 0:
        raise ValueError(f"winter hole must be >= 0, got {w}")
    return w / (w + 1.0)


def excess_threshold(w: float) -> float:
    """Coverage e = (w+2)/(2(w+1)) at which peak production meets demand.

    Strictly decreasing in w, from 1 at w=0 toward 1/2.
    """
    w = _require_finite("winter hole", w)
    if w < 0:
        raise ValueError(f"winter hole must be >= 0, got {w}")
    return (w + 2.0) / (2.0 * (w + 1.0))


def entry_threshold_ratio(w: float, k: float) -> float:
    """PV-to-baseload cost ratio below which PV jumps from 0 to e coverage.

    (w + 2 - k*w) / (2*(w+1)); equals 1 at w=0 for every cost structure k.
    """
    w = _require_finite("winter hole", w)
    k = _require_finite("fixed share", k)
    if w < 0:
        raise ValueError(f"winter hole must be >= 0, got {w}")
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"fixed share must be in [0, 1], got {k}")
    return (w + 2.0 - k * w) / (2.0 * (w + 1.0))


def autarky_cost(
    beta: float,
    site: SiteParams,
    bb: BaseloadBackupCost,
    pv_cost: float,
) -> float:
    """Unit cost of electricity (USD/MWh consumed) at PV coverage beta.

    Below the excess threshold the mix is PV (weighted by beta/e, with the
    winter-hole backup) plus residual baseload; above it, PV carries excess
    capacity whose curtailment is priced by dividing total PV cost by the
    energy actually consumed, and the backup share shrinks quadratically.
    """
    beta = _require_finite("beta", beta)
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    pv_cost = _require_finite("pv_cost", pv_cost)

    w = site.winter_hole
    a = site.adjustment
    e = site.excess_threshold
    f_b = bb.fixed_per_mwh
    v_b = bb.variable_unit

    if beta <= e or e >= 1.0:
        pv_block = pv_cost + a * (f_b + v_b / 2.0)
        return (beta / e) * pv_block + ((e - beta) / e) * (f_b + v_b)
    # beta > e, only reachable for w > 0 (e < 1)
    u = (beta - e) / (1.0 - e)
    return (
        pv_cost * (1.0 + u * w)
        + a * (1.0 - u) * f_b
        + a * (1.0 - u) ** 2 * v_b / 2.0
    )


def _interior_beta(w: float, f_b: float, v_b: float, pv_cost: float) -> float:
    """Stationary point of the above-threshold branch, before clipping.

    beta = (a*v_B + a*f_B*(1-e) - w*f_P*(1-e)) / (a*v_B). With v_B = 0 the
    branch is linear: the sign of f_P*w - a*f_B decides between e and 1.
    """
    a = adjustment_factor(w)
    e = excess_threshold(w)
    slope = pv_cost * w - a * f_b
    if v_b == 0.0:
        return 1.0 if slope <= 0.0 else e
    return (a * v_b + a * f_b * (1.0 - e) - w * pv_cost * (1.0 - e)) / (a * v_b)


_TIE_BAND = 1e-12  # relative: cost differences below this count as ties


def optimal_beta(site: SiteParams, bb: BaseloadBackupCost, pv_cost: float) -> float:
    """Cost-minimizing PV coverage over [0, 1].

    Zero when PV-plus-backup at the excess threshold costs more than pure
    baseload (the entry-threshold condition, compared directly on costs);
    otherwise the interior stationary point clipped to [e, 1]. At w=0 the
    optimum is bang-bang (0 or 1) by direct cost comparison. Ties, up to
    float noise, resolve toward the higher-PV outcome.
    """
    pv_cost = _require_finite("pv_cost", pv_cost)
    if pv_cost < 0:
        raise ValueError(f"pv_cost must be >= 0, got {pv_cost}")
    w = site.winter_hole
    c_b = bb.unit_cost
    if c_b == 0.0:
        # Baseload is free: PV can never strictly beat it.
        return 0.0
    if w == 0.0:
        return 1.0 if pv_cost <= c_b * (1.0 + _TIE_BAND) else 0.0
    a = site.adjustment
    pv_block = pv_cost + a * (bb.fixed_per_mwh + bb.variable_unit / 2.0)
    if pv_block > c_b * (1.0 + _TIE_BAND):
        return 0.0
    e = excess_threshold(w)
    beta = _interior_beta(w, bb.fixed_per_mwh, bb.variable_unit, pv_cost)
    return max(e, min(1.0, beta))


def optimal_beta_ratio_form(w: float, k: float, ratio: float) -> float:
    """Interior optimum expressed in (k, C_P/C_B) space, before clipping.

    Algebraically identical to the stationary point used by optimal_beta;
    kept as an independent cross-check and for the coverage surface.
    """
    w = _require_finite("winter hole", w)
    if w <= 0:
        raise ValueError("ratio form is defined for w > 0")
    denom = 2.0 * (k + k * w - w - 1.0)
    return (ratio * (w * w + w) + 2.0 * (k - w - 1.0) + k * w) / denom


def pv_unit_cost(site: SiteParams, pv: PVCostInputs, regime: TradeRegime) -> float:
    """Unit cost of subseasonally dispatchable PV (USD/MWh) per regime.

    Autarky and North-South price the full overcapacity and storage;
    East-West subtracts the diurnal minima (1.05 overcapacity, half a day
    of storage); the global grid needs generation only, at the optimal
    siting yield E*.
    """
    if regime is TradeRegime.GLOBAL:
        site._need("optimal_yield_estar")
        return pv.aic_gen / site.optimal_yield_estar * 1000.0

    site._need("yield_ep", "ocf", "storage_ratio")
    e_p = site.yield_ep
    if regime in (TradeRegime.AUTARKY, TradeRegime.NORTH_SOUTH):
        return (site.ocf * pv.aic_gen + site.storage_ratio * pv.aic_sto) / e_p * 1000.0

    if regime is TradeRegime.EAST_WEST:
        sto_floor = e_p / HALF_DAYS_PER_YEAR
        if site.ocf < EAST_WEST_MIN_OCF or site.storage_ratio < sto_floor:
            raise ValueError(
                "East-West costing needs inputs at or above the diurnal minima "
                f"(OCF >= {EAST_WEST_MIN_OCF}, S/G >= E_p/730 = {sto_floor:.4f} kWh/kWp); "
                f"got OCF={site.ocf}, S/G={site.storage_ratio}"
            )
        gen_term = (site.ocf - EAST_WEST_MIN_OCF) * pv.aic_gen / e_p
        sto_term = (site.storage_ratio / e_p - 1.0 / HALF_DAYS_PER_YEAR) * pv.aic_sto
        return (gen_term + sto_term) * 1000.0

    raise ValueError(f"unknown trade regime: {regime!r}")


def gains_from_trade(c_autarky: float, c_trade: float, tc: float) -> float:
    """Unit gains = autarky cost - trade cost - transmission cost.

    May be negative when transmission eats the whole advantage.
    """
    c_autarky = _require_finite("c_autarky", c_autarky)
    c_trade = _require_finite("c_trade", c_trade)
    tc = _require_finite("tc", tc)
    if tc < 0:
        raise ValueError(f"tc must be >= 0, got {tc}")
    return c_autarky - c_trade - tc


def regime_unit_cost(
    site: SiteParams,
    bb: BaseloadBackupCost,
    pv: PVCostInputs,
    regime: TradeRegime,
    tc: float = 0.0,
) -> ScenarioResult:
    """Evaluate one regime end to end: coverage, unit cost, WTP, gains.

    North-South re-evaluates the site at w=0 with the autarky PV cost
    (trade removes seasonality only); East-West keeps the site's w but
    uses the diurnal-reduced PV cost; the global grid is a straight
    cheapest-technology comparison. WTP is the autarky-minus-trade cost
    difference and is None for autarky itself.
    """
    if regime is TradeRegime.AUTARKY:
        pv_c = pv_unit_cost(site, pv, TradeRegime.AUTARKY)
        beta = optimal_beta(site, bb, pv_c)
        cost = autarky_cost(beta, site, bb, pv_c)
        return ScenarioResult(regime, beta, cost, pv_c)

    autarky = regime_unit_cost(site, bb, pv, TradeRegime.AUTARKY)

    if regime is TradeRegime.NORTH_SOUTH:
        pv_c = autarky.pv_unit_cost
        beta = 1.0 if pv_c <= bb.unit_cost else 0.0
        cost = pv_c if beta == 1.0 else bb.unit_cost
    elif regime is TradeRegime.EAST_WEST:
        pv_c = pv_unit_cost(site, pv, TradeRegime.EAST_WEST)
        beta = optimal_beta(site, bb, pv_c)
        cost = autarky_cost(beta, site, bb, pv_c)
    elif regime is TradeRegime.GLOBAL:
        pv_c = pv_unit_cost(site, pv, TradeRegime.GLOBAL)
        beta = 1.0 if pv_c <= bb.unit_cost else 0.0
        cost = pv_c if beta == 1.0 else bb.unit_cost
    else:
        raise ValueError(f"unknown trade regime: {regime!r}")

    wtp = autarky.unit_cost - cost
    return ScenarioResult(
        regime,
        beta,
        cost,
        pv_c,
        wtp=wtp,
        gains=gains_from_trade(autarky.unit_cost, cost, tc),
    )


def evaluate_site(
    site: SiteParams,
    bb: BaseloadBackupCost,
    pv: PVCostInputs,
    regimes: tuple[TradeRegime, ...] = (
        TradeRegime.AUTARKY,
        TradeRegime.EAST_WEST,
        TradeRegime.NORTH_SOUTH,
        TradeRegime.GLOBAL,
    ),
    tc: float = 0.0,
) -> dict[TradeRegime, ScenarioResult]:
    """Evaluate several regimes for one site."""
    return {regime: regime_unit_cost(site, bb, pv, regime, tc=tc) for regime in regimes}
