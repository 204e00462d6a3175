"""Solar-PV coverage and electricity-trade cost engine."""

from pvtrade.model import (
    BaseloadBackupCost,
    PVCostInputs,
    ScenarioResult,
    SiteParams,
    TradeRegime,
    adjustment_factor,
    autarky_cost,
    capital_recovery_factor,
    entry_threshold_ratio,
    evaluate_site,
    excess_threshold,
    gains_from_trade,
    optimal_beta,
    pv_unit_cost,
    regime_unit_cost,
)

__version__ = "0.1.0"

__all__ = [
    "BaseloadBackupCost",
    "PVCostInputs",
    "ScenarioResult",
    "SiteParams",
    "TradeRegime",
    "adjustment_factor",
    "autarky_cost",
    "capital_recovery_factor",
    "entry_threshold_ratio",
    "evaluate_site",
    "excess_threshold",
    "gains_from_trade",
    "optimal_beta",
    "pv_unit_cost",
    "regime_unit_cost",
    "__version__",
]
