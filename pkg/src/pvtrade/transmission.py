"""HVDC transmission unit-cost calculators.

Two financing conventions coexist: a true annuity over the line lifetime
(capital recovery factor) and a flat percentage-of-capex yearly charge
(capital + depreciation + O&M rates). Losses are valued against the
upstream energy cost, and the utilization division applies to the
loss-inclusive subtotal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from pvtrade.model import HOURS_PER_YEAR, capital_recovery_factor


def annuity(principal: float, rate: float, years: float) -> float:
    """Constant yearly payment amortizing principal over years at rate."""
    if not math.isfinite(principal) or principal < 0:
        raise ValueError(f"principal must be >= 0, got {principal}")
    if years < 1:
        raise ValueError(f"years must be >= 1, got {years}")
    return principal * capital_recovery_factor(rate, years)


@dataclass(frozen=True)
class TransmissionSpec:
    """One line's cost inputs.

    Exactly one of capex_total_musd or capex_musd_per_km must be given.
    financing selects the yearly-cost convention: "annuity" uses
    capital_rate over lifetime_years; "flat" charges
    (capital + depreciation + om) rates on capex every year.
    """

    name: str = "line"
    length_km: float = 0.0
    capex_total_musd: float | None = None
    capex_musd_per_km: float | None = None
    delivered_power_gw: float = 1.0
    financing: str = "annuity"
    lifetime_years: float = 25.0
    capital_rate: float = 0.05
    depreciation_rate: float = 0.0
    om_rate: float = 0.0
    utilization: float = 1.0
    loss_per_1000km: float = 0.0
    upstream_energy_cost: float = 0.0
    voltage_factor: float = 1.0
    scale_factor: float = 1.0
    notes: str = ""

    def __post_init__(self) -> None:
        if (self.capex_total_musd is None) == (self.capex_musd_per_km is None):
            raise ValueError("give exactly one of capex_total_musd or capex_musd_per_km")
        if self.capex_musd_per_km is not None and self.length_km <= 0:
            raise ValueError("per-km capex needs a positive length_km")
        if self.delivered_power_gw <= 0:
            raise ValueError(f"delivered_power_gw must be positive, got {self.delivered_power_gw}")
        if not 0.0 < self.utilization <= 1.0:
            raise ValueError(f"utilization must be in (0, 1], got {self.utilization}")
        if self.financing not in ("annuity", "flat"):
            raise ValueError(f"financing must be 'annuity' or 'flat', got {self.financing!r}")
        for name in ("capital_rate", "depreciation_rate", "om_rate", "loss_per_1000km"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        for name in ("voltage_factor", "scale_factor"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {value}")

    @property
    def capex_musd(self) -> float:
        if self.capex_total_musd is not None:
            return self.capex_total_musd
        return self.capex_musd_per_km * self.length_km

    @property
    def loss_fraction(self) -> float:
        return self.loss_per_1000km * self.length_km / 1000.0


@dataclass(frozen=True)
class TransmissionBreakdown:
    """Itemized unit-cost result, all money in USD."""

    spec: TransmissionSpec
    capex_musd: float
    yearly_cost_musd: float
    delivered_mwh_per_year: float
    capital_unit_cost: float
    loss_fraction: float
    loss_unit_cost: float
    projection_factor: float
    unit_cost_before_utilization: float
    unit_cost: float
    lines: list[tuple[str, str]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "name": self.spec.name,
            "capex_musd": self.capex_musd,
            "yearly_cost_musd": self.yearly_cost_musd,
            "delivered_mwh_per_year": self.delivered_mwh_per_year,
            "capital_unit_cost_usd_per_mwh": self.capital_unit_cost,
            "loss_fraction": self.loss_fraction,
            "loss_unit_cost_usd_per_mwh": self.loss_unit_cost,
            "projection_factor": self.projection_factor,
            "unit_cost_before_utilization_usd_per_mwh": self.unit_cost_before_utilization,
            "utilization": self.spec.utilization,
            "unit_cost_usd_per_mwh": self.unit_cost,
        }


def yearly_cost_musd(spec: TransmissionSpec) -> float:
    """Yearly system cost (million USD) under the line's financing convention."""
    if spec.financing == "annuity":
        return annuity(spec.capex_musd, spec.capital_rate, spec.lifetime_years)
    flat_rate = spec.capital_rate + spec.depreciation_rate + spec.om_rate
    return spec.capex_musd * flat_rate


def unit_transmission_cost(spec: TransmissionSpec) -> TransmissionBreakdown:
    """Unit transmission cost (USD/MWh delivered) with an itemized trail.

    unit = (yearly_cost / (P*8760) + loss_fraction*upstream) * vf * sf / utilization
    """
    yearly = yearly_cost_musd(spec)
    base_mwh = spec.delivered_power_gw * 1000.0 * HOURS_PER_YEAR
    if base_mwh <= 0:
        raise ValueError("delivered energy must be positive")
    capital_unit = yearly * 1e6 / base_mwh
    loss_unit = spec.loss_fraction * spec.upstream_energy_cost
    projection = spec.voltage_factor * spec.scale_factor
    before_util = (capital_unit + loss_unit) * projection
    unit = before_util / spec.utilization

    lines = [
        ("financing", spec.financing),
        ("capex", f"{spec.capex_musd:,.1f} M USD"),
        ("yearly cost", f"{yearly:,.1f} M USD/yr"),
        ("energy at full utilization", f"{base_mwh / 1e6:,.3f} M MWh/yr"),
        ("capital unit cost", f"{capital_unit:,.2f} USD/MWh"),
        ("loss fraction", f"{spec.loss_fraction:.3%}"),
        ("loss unit cost", f"{loss_unit:,.2f} USD/MWh"),
    ]
    if projection != 1.0:
        lines.append(("future projection factor", f"{projection:.3f}"))
    lines.extend(
        [
            ("unit cost before utilization", f"{before_util:,.2f} USD/MWh"),
            ("utilization", f"{spec.utilization:.0%}"),
            ("unit cost", f"{unit:,.2f} USD/MWh"),
        ]
    )
    return TransmissionBreakdown(
        spec=spec,
        capex_musd=spec.capex_musd,
        yearly_cost_musd=yearly,
        delivered_mwh_per_year=base_mwh * spec.utilization,
        capital_unit_cost=capital_unit,
        loss_fraction=spec.loss_fraction,
        loss_unit_cost=loss_unit,
        projection_factor=projection,
        unit_cost_before_utilization=before_util,
        unit_cost=unit,
        lines=lines,
    )


def future_cost_projection(
    current: float, voltage_factor: float, scale_factor: float
) -> float:
    """Scale a unit cost by voltage and manufacturing-scale factors."""
    for name, value in (("voltage_factor", voltage_factor), ("scale_factor", scale_factor)):
        if not 0.0 < value <= 1.0:
            raise ValueError(f"{name} must be in (0, 1], got {value}")
    return current * voltage_factor * scale_factor


def load_spec_json(path: str | Path) -> TransmissionSpec:
    """Read a TransmissionSpec from a JSON file."""
    path = Path(path)
    with path.open() as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: expected a JSON object")
    known = set(TransmissionSpec.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"{path}: unknown fields: {', '.join(sorted(unknown))}")
    try:
        return TransmissionSpec(**raw)
    except TypeError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def bundled_spec_path(name: str) -> Path:
    """Path of a packaged example spec: suncable, macdonald or future."""
    candidate = resources.files("pvtrade").joinpath(f"data/{name}.json")
    path = Path(str(candidate))
    if not path.exists():
        raise ValueError(f"no bundled transmission spec named {name!r}")
    return path
