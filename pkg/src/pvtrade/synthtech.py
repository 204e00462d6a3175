"""Synthetic baseload/backup technology built from per-technology costs.

Aggregates a share-weighted mix of dispatchable technologies into one
BaseloadBackupCost: fixed costs are grossed up by each technology's
capacity factor (low-CF plants need more capacity per unit of energy),
variable costs are straight share-weighted.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from pvtrade.model import HOURS_PER_YEAR, BaseloadBackupCost

SCENARIOS = ("min", "max", "mean")

SHARE_TOLERANCE = 1e-9

# Combined-cycle share of gas generation (capacity shares differ).
GAS_CC_GENERATION_FRACTION = 0.857


@dataclass(frozen=True)
class TechCostSpec:
    """One technology's cost row across the min/max/mean scenarios.

    fixed costs in thousand USD per MW-year, variable in USD/MWh,
    capacity factors as fractions, generation share as a fraction.
    """

    name: str
    fixed: dict[str, float]
    variable: dict[str, float]
    capacity_factor: dict[str, float]
    share: float

    def __post_init__(self) -> None:
        for scenario in SCENARIOS:
            if self.fixed.get(scenario) is None or self.fixed[scenario] < 0:
                raise ValueError(f"{self.name}: fixed[{scenario}] must be >= 0")
            if self.variable.get(scenario) is None or self.variable[scenario] < 0:
                raise ValueError(f"{self.name}: variable[{scenario}] must be >= 0")
            cf = self.capacity_factor.get(scenario)
            if cf is None or not 0.0 < cf <= 1.0:
                raise ValueError(f"{self.name}: capacity_factor[{scenario}] must be in (0, 1]")
        if not 0.0 <= self.share <= 1.0:
            raise ValueError(f"{self.name}: share must be in [0, 1], got {self.share}")


def split_gas_shares(
    gas_total_share: float, cc_generation_fraction: float = GAS_CC_GENERATION_FRACTION
) -> tuple[float, float]:
    """Split total gas generation into (combined cycle, peaking) shares."""
    if not 0.0 <= gas_total_share <= 1.0:
        raise ValueError(f"gas_total_share must be in [0, 1], got {gas_total_share}")
    if not 0.0 <= cc_generation_fraction <= 1.0:
        raise ValueError(
            f"cc_generation_fraction must be in [0, 1], got {cc_generation_fraction}"
        )
    cc = gas_total_share * cc_generation_fraction
    return cc, gas_total_share - cc


def bundled_tech_table_path() -> Path:
    """Filesystem path of the packaged technology cost table."""
    return Path(str(resources.files("pvtrade").joinpath("data/tech_costs.csv")))


def load_tech_table(path: str | Path | None = None) -> list[TechCostSpec]:
    """Read a technology table CSV (see data/tech_costs.csv for columns)."""
    path = Path(path) if path is not None else bundled_tech_table_path()
    specs: list[TechCostSpec] = []
    with path.open(newline="") as handle:
        rows = (line for line in handle if not line.lstrip().startswith("#"))
        reader = csv.DictReader(rows)
        required = {"name", "share"} | {
            f"{prefix}_{s}" for prefix in ("f", "v", "cf") for s in SCENARIOS
        }
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            missing = sorted(required - set(reader.fieldnames or []))
            raise ValueError(f"{path}: missing columns: {', '.join(missing)}")
        for row in reader:
            try:
                specs.append(
                    TechCostSpec(
                        name=row["name"],
                        fixed={s: float(row[f"f_{s}"]) for s in SCENARIOS},
                        variable={s: float(row[f"v_{s}"]) for s in SCENARIOS},
                        capacity_factor={s: float(row[f"cf_{s}"]) for s in SCENARIOS},
                        share=float(row["share"]),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{path}: bad row {row.get('name', '?')!r}: {exc}") from exc
    if not specs:
        raise ValueError(f"{path}: no technology rows")
    return specs


def technology_contribution(spec: TechCostSpec, scenario: str) -> tuple[float, float]:
    """One technology's (fixed, variable) contribution to the mix."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    fixed = spec.fixed[scenario] * spec.share / spec.capacity_factor[scenario]
    variable = spec.variable[scenario] * spec.share
    return fixed, variable


def build_synthetic(
    specs: list[TechCostSpec],
    scenario: str,
    *,
    variable_scenario: str | None = None,
) -> BaseloadBackupCost:
    """Aggregate the mix: f_B = sum(f_i*s_i/CF_i), v_B = sum(v_i*s_i).

    variable_scenario allows cross-scenario mixing (e.g. min fixed with
    max variable) for sensitivity sweeps; it defaults to scenario.
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    v_scenario = variable_scenario or scenario
    if v_scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {v_scenario!r}; expected one of {SCENARIOS}")
    total_share = math.fsum(s.share for s in specs)
    if abs(total_share - 1.0) > SHARE_TOLERANCE:
        raise ValueError(f"generation shares must sum to 1, got {total_share!r}")
    fixed = math.fsum(technology_contribution(s, scenario)[0] for s in specs)
    variable = math.fsum(s.variable[v_scenario] * s.share for s in specs)
    return BaseloadBackupCost(fixed_annual=fixed, variable_unit=variable)


def lcoe_at_capacity_factor(bb: BaseloadBackupCost, cf: float) -> float:
    """Levelized cost (USD/MWh) of the mix run at capacity factor cf."""
    if not 0.0 < cf <= 1.0:
        raise ValueError(f"capacity factor must be in (0, 1], got {cf}")
    return bb.fixed_annual * 1000.0 / (HOURS_PER_YEAR * cf) + bb.variable_unit


def lcoe_curve(
    bb: BaseloadBackupCost, cf_min: float = 0.05, cf_max: float = 1.0, points: int = 96
) -> list[tuple[float, float]]:
    """(cf, LCOE) samples for plotting the cost-vs-utilization curve."""
    if points < 2:
        raise ValueError("points must be >= 2")
    step = (cf_max - cf_min) / (points - 1)
    return [
        (cf, lcoe_at_capacity_factor(bb, cf))
        for cf in (cf_min + i * step for i in range(points))
    ]
