"""Batch command-line entry point.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from pvtrade import __version__
from pvtrade.geo import (
    RunConfig,
    evaluate_grid,
    generate_anchor_table,
    latitude_profile,
    load_insolation_csv,
    synthetic_grid,
    write_anchor_csv,
    write_outputs,
)
from pvtrade.model import PVCostInputs
from pvtrade.synthtech import (
    build_synthetic,
    lcoe_curve,
    load_tech_table,
)
from pvtrade.transmission import (
    bundled_spec_path,
    load_spec_json,
    unit_transmission_cost,
)


@click.group()
@click.version_option(version=__version__, prog_name="pvtrade")
def main() -> None:
    """Solar-PV coverage and electricity-trade cost engine."""


@main.command("synth-tech")
@click.option("--table", "table_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Technology cost table CSV (default: bundled).")
@click.option("--scenario", type=click.Choice(["min", "max", "mean"]), default="max",
              show_default=True)
@click.option("--variable-scenario", type=click.Choice(["min", "max", "mean"]), default=None,
              help="Mix a different column for variable costs (sensitivity sweeps).")
@click.option("--lcoe-csv", type=click.Path(dir_okay=False), default=None,
              help="Write the LCOE-vs-capacity-factor curve here.")
@click.option("--plots", is_flag=True, help="Render a PNG next to the LCOE CSV.")
def synth_tech(table_path, scenario, variable_scenario, lcoe_csv, plots) -> None:
    """Aggregate the dispatchable mix and print its cost structure."""
    try:
        specs = load_tech_table(table_path)
        bb = build_synthetic(specs, scenario, variable_scenario=variable_scenario)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"scenario:            {scenario}" +
               (f" (variable: {variable_scenario})" if variable_scenario else ""))
    click.echo(f"fixed cost     f_B:  {bb.fixed_annual:8.1f} k USD/MW-yr")
    click.echo(f"variable cost  v_B:  {bb.variable_unit:8.2f} USD/MWh")
    click.echo(f"unit cost      C_B:  {bb.unit_cost:8.2f} USD/MWh at full utilization")
    click.echo(f"fixed share    k:    {bb.fixed_share:8.4f}")
    if lcoe_csv:
        curve = lcoe_curve(bb)
        with open(lcoe_csv, "w") as handle:
            handle.write("capacity_factor,lcoe_usd_per_mwh\n")
            for cf, value in curve:
                handle.write(f"{cf:.6g},{value:.6g}\n")
        click.echo(f"wrote {lcoe_csv}")
        if plots:
            from pvtrade.report import lcoe_curve_figure

            png = Path(lcoe_csv).with_suffix(".png")
            lcoe_curve_figure(curve, png, label=f"{scenario} scenario")
            click.echo(f"wrote {png}")


@main.command("grid-run")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Run-config JSON.")
@click.option("--data", "data_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Insolation CSV (lat,lon,day,ghi_kwh_m2_day).")
@click.option("--yield-data", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Yield CSV (lat,lon,kwh_per_kwp_year).")
@click.option("--synthetic", is_flag=True, help="Evaluate the synthetic latitude grid.")
@click.option("--scenario", type=click.Choice(["central", "high", "median", "low"]),
              default=None, help="Cost scenario (overrides config).")
@click.option("--resolution", type=float, default=None, help="Synthetic grid step, degrees.")
@click.option("--workers", type=int, default=None, help="Worker processes for evaluation.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--plots", is_flag=True, help="Render PNG figures next to the CSVs.")
def grid_run(config_path, data_path, yield_data, synthetic, scenario, resolution,
             workers, out_dir, plots) -> None:
    """Evaluate a cell grid for every trade regime and write outputs."""
    if not synthetic and data_path is None and config_path is None:
        raise click.UsageError("give --data, --config, or --synthetic")
    raw = {}
    if config_path:
        with open(config_path) as handle:
            raw = json.load(handle)
    if scenario:
        raw["scenario"] = scenario
    if resolution:
        raw["resolution_deg"] = resolution
    if workers:
        raw["workers"] = workers
    if synthetic:
        raw["synthetic"] = True
    try:
        config = RunConfig.from_dict(raw)
    except (TypeError, ValueError) as exc:
        raise click.ClickException(f"bad run config: {exc}")

    try:
        if data_path:
            if config.synthetic:
                config = RunConfig.from_dict(
                    {**config.as_dict(), "synthetic": False, "workers": config.workers}
                )
            cells, load_rejections = load_insolation_csv(
                data_path, yield_csv=yield_data, performance_ratio=config.performance_ratio
            )
            if not cells:
                missing = "; ".join(r.reason for r in load_rejections[:5]) or "no rows"
                raise click.ClickException(f"no usable cells in {data_path} ({missing})")
        else:
            cells = synthetic_grid(resolution_deg=config.resolution_deg, lat_max=config.lat_max)
            load_rejections = []
        run = evaluate_grid(cells, config)
        run.rejections.extend(load_rejections)
        written = write_outputs(run, out_dir)
    except click.ClickException:
        raise
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))

    click.echo(f"evaluated {len(run.cells)} cells ({len(run.rejections)} rejected)")
    click.echo(f"E* = {run.estar:.1f} kWh/kWp")
    for name, path in written.items():
        click.echo(f"wrote {path}")
    if plots:
        from pvtrade.report import latitude_profile_figure

        rows = latitude_profile(run)
        png = Path(out_dir) / "latitude_profile.png"
        latitude_profile_figure(rows, png, title=f"{config.scenario} scenario")
        click.echo(f"wrote {png}")


@main.command("transmission")
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Line spec JSON.")
@click.option("--bundled", "bundled_name", type=click.Choice(["suncable", "macdonald", "future"]),
              default=None, help="Use a packaged example spec.")
@click.option("--json", "as_json", is_flag=True, help="Emit the breakdown as JSON.")
def transmission(spec_path, bundled_name, as_json) -> None:
    """Itemized HVDC unit-cost breakdown for a line spec."""
    if (spec_path is None) == (bundled_name is None):
        raise click.UsageError("give exactly one of --spec and --bundled")
    try:
        path = Path(spec_path) if spec_path else bundled_spec_path(bundled_name)
        spec = load_spec_json(path)
        breakdown = unit_transmission_cost(spec)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(json.dumps(breakdown.as_dict(), indent=2))
        return
    click.echo(f"line: {spec.name}")
    for label, value in breakdown.lines:
        click.echo(f"  {label:28s} {value}")


@main.command("surface")
@click.option("--w", "winter_hole", type=float, required=True, help="Winter hole coefficient.")
@click.option("--steps", type=int, default=81, show_default=True, help="Grid steps per axis.")
@click.option("--out", "out_png", type=click.Path(dir_okay=False), required=True,
              help="PNG path for the coverage surface.")
@click.option("--csv", "out_csv", type=click.Path(dir_okay=False), default=None,
              help="Also write the grid as CSV (k, ratio, beta).")
def surface(winter_hole, steps, out_png, out_csv) -> None:
    """Render the optimal-coverage surface over (k, cost ratio)."""
    import numpy as np

    from pvtrade.model import (
        BaseloadBackupCost,
        SiteParams,
        entry_threshold_ratio,
        excess_threshold,
        optimal_beta,
    )
    from pvtrade.report import coverage_surface_figure

    if winter_hole < 0:
        raise click.UsageError("--w must be >= 0")
    if not 2 <= steps <= 500:
        raise click.UsageError("--steps must be in 2..500")
    ks = np.linspace(0.0, 1.0, steps)
    ratios = np.linspace(0.05, 1.5, steps)
    site = SiteParams(winter_hole=winter_hole)
    beta = [
        [optimal_beta(site, BaseloadBackupCost.from_unit_cost(1.0, float(k)), float(r))
         for r in ratios]
        for k in ks
    ]
    payload = {
        "w": winter_hole,
        "excess_threshold": excess_threshold(winter_hole),
        "k_values": list(ks),
        "ratio_values": list(ratios),
        "beta": beta,
        "entry_ratio_per_k": [entry_threshold_ratio(winter_hole, float(k)) for k in ks],
    }
    coverage_surface_figure(payload, out_png)
    click.echo(f"wrote {out_png}")
    if out_csv:
        with open(out_csv, "w") as handle:
            handle.write("k,ratio,beta\n")
            for i, k in enumerate(ks):
                for j, ratio in enumerate(ratios):
                    handle.write(f"{k:.6g},{ratio:.6g},{beta[i][j]:.6g}\n")
        click.echo(f"wrote {out_csv}")


@main.command("make-anchors")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--lat-step", type=float, default=2.5, show_default=True)
@click.option("--lat-max", type=float, default=60.0, show_default=True)
def make_anchors(out_path, lat_step, lat_max) -> None:
    """Regenerate the (latitude, OCF, S/G) anchor table by sizing the
    synthetic subseasonal series at each latitude."""
    try:
        rows = generate_anchor_table(lat_step=lat_step, lat_max=lat_max, pv=PVCostInputs())
        write_anchor_csv(out_path, rows)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {len(rows)} anchors to {out_path}")


@main.command("serve")
@click.option("--addr", default="127.0.0.1:8214", show_default=True,
              help="Listen address as HOST:PORT.")
@click.option("--anchors", type=click.Path(exists=True, dir_okay=False), default=None,
              envvar="PVTRADE_ANCHORS")
@click.option("--presets", type=click.Path(exists=True, dir_okay=False), default=None,
              envvar="PVTRADE_PRESETS")
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              envvar="PVTRADE_UI_DIR", help="Static bundle to serve under /ui.")
def serve(addr, anchors, presets, ui_dir) -> None:
    """Run the scenario service."""
    host, sep, port_text = addr.rpartition(":")
    if not sep or not host or not port_text.isdigit():
        raise click.UsageError(f"--addr must be HOST:PORT, got {addr!r}")
    port = int(port_text)
    if not 0 < port < 65536:
        raise click.UsageError(f"port out of range: {port}")

    import uvicorn

    from pvtrade.service import create_app

    app = create_app(anchors_path=anchors, presets_path=presets, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:  # port collision and friends
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    sys.exit(main())
