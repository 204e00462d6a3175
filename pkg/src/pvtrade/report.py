"""Matplotlib renderers for the CLI's report path.

Figures are rendered straight to files next to the delimited outputs;
everything here consumes the same row dictionaries the CSV writers use.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

REGIME_STYLE = {
    "autarky": dict(color="#444444", label="autarky"),
    "east_west": dict(color="#d95f02", label="east-west trade"),
    "north_south": dict(color="#1b9e77", label="north-south trade"),
    "global": dict(color="#7570b3", label="global grid"),
}


def latitude_profile_figure(rows: list[dict], path: str | Path, title: str = "") -> Path:
    """Per-regime unit-cost curves by latitude with WTP band shading."""
    path = Path(path)
    lats = [row["lat"] for row in rows]
    fig, ax = plt.subplots(figsize=(8.0, 4.8))
    autarky = [row.get("unit_cost_autarky") for row in rows]
    for regime, style in REGIME_STYLE.items():
        values = [row.get(f"unit_cost_{regime}") for row in rows]
        if all(v is None for v in values):
            continue
        ax.plot(lats, values, lw=1.8, **style)
        if regime != "autarky" and autarky[0] is not None:
            ax.fill_between(lats, values, autarky, color=style["color"], alpha=0.08)
    ax.set_xlabel("latitude (deg)")
    ax.set_ylabel("unit cost of electricity (USD/MWh)")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def lcoe_curve_figure(curve: list[tuple[float, float]], path: str | Path, label: str = "") -> Path:
    """Levelized cost against capacity factor for the dispatchable mix."""
    path = Path(path)
    cf, lcoe = zip(*curve)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(cf, lcoe, lw=1.8, color="#2166ac", label=label or None)
    ax.set_xlabel("capacity factor")
    ax.set_ylabel("LCOE (USD/MWh)")
    ax.grid(alpha=0.3)
    if label:
        ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def coverage_surface_figure(surface: dict, path: str | Path) -> Path:
    """Optimal-coverage heatmap over (k, cost ratio) with the entry cliff."""
    path = Path(path)
    beta = np.asarray(surface["beta"])
    ks = np.asarray(surface["k_values"])
    ratios = np.asarray(surface["ratio_values"])
    fig, ax = plt.subplots(figsize=(6.8, 4.8))
    mesh = ax.pcolormesh(ratios, ks, beta, cmap="viridis", vmin=0.0, vmax=1.0, shading="auto")
    ax.plot(surface["entry_ratio_per_k"], ks, color="white", lw=1.4, ls="--",
            label="entry threshold")
    ax.set_xlabel("PV / baseload cost ratio")
    ax.set_ylabel("fixed-cost share k")
    ax.set_title(f"optimal PV coverage, winter hole w = {surface['w']:g}")
    fig.colorbar(mesh, ax=ax, label="coverage")
    ax.legend(frameon=False, fontsize=9, loc="lower left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
