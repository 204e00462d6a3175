"""Pipeline tests: synthetic series, loaders, grid evaluation, writers."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest
from pytest import approx

from pvtrade.dispatch import (
    InsolationSeries,
    optimize_gs,
    subseasonal_series,
    winter_hole_from_series,
)
from pvtrade.geo import (
    GridCell,
    RunConfig,
    bundled_anchor_path,
    evaluate_grid,
    generate_anchor_table,
    interpolate_site_params,
    latitude_profile,
    load_anchor_csv,
    load_insolation_csv,
    synthetic_grid,
    write_insolation_csv,
    write_outputs,
)
from pvtrade.model import PVCostInputs, TradeRegime
from pvtrade.synthseries import (
    annual_yield_curve,
    synthetic_latitude_series,
    synthetic_subseasonal_series,
)


def write_cell_rows(path, cells_days):
    """cells_days: list of (lat, lon, {day: value})"""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lat", "lon", "day", "ghi_kwh_m2_day"])
        for lat, lon, days in cells_days:
            for day, value in sorted(days.items()):
                writer.writerow([lat, lon, day, value])


class TestSyntheticSeries:
    def test_equator_is_nearly_flat(self):
        series = synthetic_latitude_series(0.0)
        assert winter_hole_from_series(series) < 0.2

    def test_hemispheres_are_half_year_shifted(self):
        north = synthetic_latitude_series(45.0)
        south = synthetic_latitude_series(-45.0)
        assert np.array_equal(np.roll(north.values, 182), south.values)

    def test_winter_hole_increases_beyond_10_degrees(self):
        lats = [10, 15, 20, 25, 30, 35, 40, 45, 50, 55]
        ws = [winter_hole_from_series(synthetic_latitude_series(lat)) for lat in lats]
        assert all(b > a for a, b in zip(ws, ws[1:]))

    def test_winter_hole_stays_in_domain(self):
        w55 = winter_hole_from_series(synthetic_latitude_series(55.0))
        assert w55 < 10.0

    def test_yield_curve_m_shape(self):
        lats = np.arange(0, 56, 1.0)
        yields = [annual_yield_curve(lat) for lat in lats]
        peak = lats[int(np.argmax(yields))]
        assert 20 <= peak <= 26
        assert annual_yield_curve(23) > annual_yield_curve(0)
        assert annual_yield_curve(23) > annual_yield_curve(55)

    def test_series_sums_to_yield_curve(self):
        for lat in (0.0, 23.0, 48.0):
            series = synthetic_latitude_series(lat)
            assert series.annual_yield == approx(annual_yield_curve(lat), rel=1e-9)

    def test_out_of_range_latitude_rejected(self):
        with pytest.raises(ValueError, match="<= 65"):
            synthetic_latitude_series(70.0)

    def test_subseasonal_component_matches_ratio_estimate(self):
        # the generator's exact weather layer and the generic 50-day-mean
        # ratio estimate should agree on sizing within a few percent
        pv = PVCostInputs()
        for lat in (0.0, 30.0):
            exact = optimize_gs(synthetic_subseasonal_series(lat), pv)
            estimated = optimize_gs(subseasonal_series(synthetic_latitude_series(lat)), pv)
            assert estimated.ocf == approx(exact.ocf, rel=0.08)
            assert estimated.s_over_g == approx(exact.s_over_g, rel=0.12)


class TestAnchors:
    def test_bundled_table_loads_and_is_symmetric(self):
        rows = load_anchor_csv(bundled_anchor_path())
        by_lat = {lat: (ocf, sg) for lat, ocf, sg in rows}
        for lat in (2.5, 25.0, 50.0):
            assert by_lat[lat] == by_lat[-lat]

    def test_anchor_shapes_qualitative(self):
        # overcapacity and storage ratios grow toward the poles; small
        # wobbles from the yield bump at the tropics are tolerated
        rows = [r for r in load_anchor_csv(bundled_anchor_path()) if 0 <= r[0] <= 55]
        ocfs = [r[1] for r in rows]
        sgs = [r[2] for r in rows]
        for seq in (ocfs, sgs):
            assert seq[-1] > seq[0]
            for a, b in zip(seq, seq[1:]):
                assert b >= a * (1 - 0.04)
        # overcapacity is monotone up to the sizing search's resolution
        assert all(b >= a * (1 - 1e-3) for a, b in zip(ocfs, ocfs[1:]))

    def test_interpolation_hits_anchors_exactly(self):
        lookup = interpolate_site_params([(0.0, 1.5, 5.0), (10.0, 1.7, 6.0)])
        assert lookup(0.0) == (1.5, 5.0)
        assert lookup(10.0) == (1.7, 6.0)

    def test_midpoint_is_arithmetic_mean(self):
        lookup = interpolate_site_params([(0.0, 1.5, 5.0), (10.0, 1.7, 6.0)])
        ocf, sg = lookup(5.0)
        assert ocf == approx(1.6)
        assert sg == approx(5.5)

    def test_clamped_outside_anchor_range(self):
        lookup = interpolate_site_params([(0.0, 1.5, 5.0), (10.0, 1.7, 6.0)])
        assert lookup(-5.0) == (1.5, 5.0)
        assert lookup(90.0) == (1.7, 6.0)

    def test_duplicate_latitudes_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            interpolate_site_params([(0.0, 1.5, 5.0), (0.0, 1.6, 5.5)])

    def test_interpolant_matches_held_out_latitudes(self):
        # leave-one-out: 5-degree anchors vs directly computed sizing at
        # intermediate latitudes
        pv = PVCostInputs()
        anchors = generate_anchor_table(lat_step=5.0, lat_max=55.0, pv=pv)
        lookup = interpolate_site_params(anchors)
        for lat in (7.5, 22.5, 42.5):
            direct = optimize_gs(synthetic_subseasonal_series(lat), pv)
            ocf, sg = lookup(lat)
            assert ocf == approx(direct.ocf, rel=0.05)
            assert sg == approx(direct.s_over_g, rel=0.05)


class TestLoader:
    def test_single_cell_round(self, tmp_path):
        days = {d: 4.0 + 0.1 * (d % 7) for d in range(1, 366)}
        path = tmp_path / "one.csv"
        write_cell_rows(path, [(10.0, 20.0, days)])
        cells, rejections = load_insolation_csv(path)
        assert len(cells) == 1 and not rejections
        assert cells[0].lat == 10.0
        assert cells[0].series.values[0] == approx(days[1])

    def test_missing_day_rejected_with_report(self, tmp_path):
        days = {d: 5.0 for d in range(1, 366) if d != 200}
        path = tmp_path / "missing.csv"
        write_cell_rows(path, [(10.0, 20.0, days)])
        cells, rejections = load_insolation_csv(path)
        assert not cells
        assert len(rejections) == 1
        assert rejections[0].lat == 10.0 and "200" in rejections[0].reason

    def test_duplicate_day_rejected(self, tmp_path):
        path = tmp_path / "dup.csv"
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["lat", "lon", "day", "ghi_kwh_m2_day"])
            for day in list(range(1, 366)) + [5]:
                writer.writerow([0.0, 0.0, day, 4.2])
        cells, rejections = load_insolation_csv(path)
        assert not cells
        assert any("duplicate" in r.reason for r in rejections)

    def test_malformed_row_reported(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["lat", "lon", "day", "ghi_kwh_m2_day"])
            writer.writerow(["x", 0.0, 1, 4.2])
        _, rejections = load_insolation_csv(path)
        assert any("malformed" in r.reason for r in rejections)

    def test_round_trip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(3)
        cells = []
        for i in range(10):
            values = rng.uniform(0.5, 8.0, 365)
            cells.append(
                GridCell(
                    lat=float(i * 5 - 20),
                    lon=float(i * 10),
                    series=InsolationSeries(values=values),
                    yield_ep=float(values.sum()),
                )
            )
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_insolation_csv(first, cells)
        loaded, rejections = load_insolation_csv(first, performance_ratio=1.0)
        assert not rejections and len(loaded) == 10
        write_insolation_csv(second, loaded)
        assert first.read_bytes() == second.read_bytes()

    def test_yield_csv_overrides_performance_ratio(self, tmp_path):
        days = {d: 5.0 for d in range(1, 366)}
        path = tmp_path / "one.csv"
        write_cell_rows(path, [(0.0, 0.0, days)])
        ypath = tmp_path / "yield.csv"
        ypath.write_text("lat,lon,kwh_per_kwp_year\n0.0,0.0,1700.5\n")
        cells, _ = load_insolation_csv(path, yield_csv=ypath)
        assert cells[0].yield_ep == approx(1700.5)
        cells, _ = load_insolation_csv(path, performance_ratio=0.8)
        assert cells[0].yield_ep == approx(5.0 * 365 * 0.8)


@pytest.fixture(scope="module")
def small_run():
    cells = synthetic_grid(resolution_deg=11.0, lon_step=60.0)
    config = RunConfig(scenario="high", resolution_deg=11.0)
    return evaluate_grid(cells, config)


class TestEvaluateGrid:
    def test_every_in_domain_cell_has_all_regimes(self, small_run):
        for cell in small_run.cells:
            assert set(cell.results) == set(small_run.config.regimes)

    def test_out_of_domain_cells_flagged(self):
        cells = synthetic_grid(resolution_deg=30.0, lat_max=60.0, lon_step=120.0)
        run = evaluate_grid(cells, RunConfig())
        assert any("outside model domain" in r.reason for r in run.rejections)
        assert all(abs(c.lat) <= 55 for c in run.cells)

    def test_polar_night_isolated_not_fatal(self):
        dark = np.concatenate([np.zeros(60), np.full(305, 5.0)])
        cells = [
            GridCell(54.0, 0.0, InsolationSeries(values=dark), 1500.0),
            GridCell(0.0, 0.0, synthetic_latitude_series(0.0), 1742.0),
        ]
        run = evaluate_grid(cells, RunConfig())
        assert len(run.cells) == 1
        assert any("polar" in r.reason for r in run.rejections)

    def test_hemispheric_symmetry(self, small_run):
        by_pos = {(c.lat, c.lon): c for c in small_run.cells}
        for (lat, lon), cell in by_pos.items():
            if lat <= 0:
                continue
            mirror = by_pos[(-lat, lon)]
            for regime, result in cell.results.items():
                assert result.unit_cost == approx(
                    mirror.results[regime].unit_cost, abs=1e-9
                )
                assert result.beta_star == approx(
                    mirror.results[regime].beta_star, abs=1e-9
                )

    def test_equatorial_east_west_beats_north_south(self, small_run):
        for cell in small_run.cells:
            if abs(cell.lat) <= 11:
                ew = cell.results[TradeRegime.EAST_WEST].wtp
                ns = cell.results[TradeRegime.NORTH_SOUTH].wtp
                assert ew > ns

    def test_high_cost_ceiling_off_equator(self, small_run):
        for cell in small_run.cells:
            if abs(cell.lat) >= 30:
                assert 110.0 <= cell.results[TradeRegime.AUTARKY].unit_cost <= 117.0

    def test_median_ceiling(self):
        cells = synthetic_grid(resolution_deg=27.0, lon_step=120.0)
        run = evaluate_grid(cells, RunConfig(scenario="median"))
        costs = [c.results[TradeRegime.AUTARKY].unit_cost for c in run.cells]
        assert min(costs) > 83.0 and max(costs) < 88.0

    def test_worker_count_does_not_change_results(self, tmp_path):
        cells = synthetic_grid(resolution_deg=22.0, lon_step=90.0)
        serial = evaluate_grid(cells, RunConfig(workers=1, resolution_deg=22.0))
        parallel = evaluate_grid(cells, RunConfig(workers=3, resolution_deg=22.0))
        a = write_outputs(serial, tmp_path / "serial")
        b = write_outputs(parallel, tmp_path / "parallel")
        for name in a:
            if name == "manifest":
                continue
            assert a[name].read_bytes() == b[name].read_bytes(), name


class TestLatitudeProfile:
    def test_single_cell_band_returns_own_values(self):
        cells = [GridCell(12.0, 7.0, synthetic_latitude_series(12.0), annual_yield_curve(12.0))]
        run = evaluate_grid(cells, RunConfig())
        rows = latitude_profile(run)
        assert len(rows) == 1
        cell = run.cells[0]
        assert rows[0]["unit_cost_autarky"] == approx(
            cell.results[TradeRegime.AUTARKY].unit_cost
        )

    def test_global_row_is_latitude_constant(self, small_run):
        rows = latitude_profile(small_run)
        values = {row["unit_cost_global"] for row in rows}
        assert max(values) - min(values) < 1e-9
        assert values.pop() == approx(21.47, abs=0.05)

    def test_gaps_are_wtp_by_construction(self, small_run):
        rows = latitude_profile(small_run)
        for row in rows:
            for regime in ("east_west", "north_south", "global"):
                gap = row["unit_cost_autarky"] - row[f"unit_cost_{regime}"]
                assert gap == approx(row[f"wtp_{regime}"], abs=1e-9)


class TestWriteOutputs:
    def test_round_trip_at_six_significant_digits(self, small_run, tmp_path):
        written = write_outputs(small_run, tmp_path)
        raster = written["raster_autarky"]
        with raster.open() as handle:
            reader = csv.DictReader(handle)
            rows = list(reader)
        assert len(rows) == len(small_run.cells)
        for row, cell in zip(rows, small_run.cells):
            expected = cell.results[TradeRegime.AUTARKY].unit_cost
            assert row["unit_cost"] == f"{expected:.6g}"
            assert float(row["unit_cost"]) == approx(expected, rel=1e-5)

    def test_manifest_hash_changes_iff_inputs_change(self, tmp_path):
        cells = synthetic_grid(resolution_deg=27.0, lon_step=120.0)
        run_a = evaluate_grid(cells, RunConfig(resolution_deg=27.0))
        run_b = evaluate_grid(cells, RunConfig(resolution_deg=27.0))
        run_c = evaluate_grid(cells, RunConfig(resolution_deg=27.0, transmission_cost=19.75))
        h = []
        for i, run in enumerate((run_a, run_b, run_c)):
            written = write_outputs(run, tmp_path / str(i))
            h.append(json.loads(written["manifest"].read_text())["manifest_hash"])
        assert h[0] == h[1]
        assert h[0] != h[2]

    def test_empty_run_writes_header_only_files(self, tmp_path):
        run = evaluate_grid([], RunConfig())
        written = write_outputs(run, tmp_path)
        content = written["raster_autarky"].read_text().strip().splitlines()
        assert content == ["lat,lon,beta,unit_cost,wtp"]
