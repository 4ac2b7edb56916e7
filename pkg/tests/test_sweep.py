"""Sweep grids, CSV round-trips, SVG emission, and config files."""

import math
import xml.etree.ElementTree as ET

import pytest

from venturebank.edcs_core import DEFAULT_PARAMS, EdcsParams, vb_earnings
from venturebank.sweep import (
    AxisSpec,
    SweepGrid,
    SweepSpec,
    dump_config,
    emit_svg,
    format_value,
    grid_to_csv_text,
    load_config,
    load_sweep_spec,
    parse_csv,
    run_sweep,
    save_config,
)
from venturebank.underwriter_scenarios import DEFAULT_SCENARIO, SaleScenario


def axis(name, lo, hi, steps):
    return AxisSpec(name, lo, hi, steps)


@pytest.fixture
def small_2d_spec():
    return SweepSpec(
        quantity="vb_roi",
        x_axis=axis("P", 1.55, 3.0, 4),
        y_axis=axis("MOC", 1.0, 47.0, 47),
    )


class TestSpecValidation:
    def test_unknown_axis(self):
        with pytest.raises(ValueError, match="unknown axis"):
            axis("Q", 0, 1, 5)

    def test_bad_steps(self):
        with pytest.raises(ValueError, match="steps"):
            axis("P", 0, 1, 1)

    def test_bad_range(self):
        with pytest.raises(ValueError, match="min < max"):
            axis("P", 1.0, 1.0, 5)

    def test_duplicate_axes(self):
        with pytest.raises(ValueError, match="must differ"):
            SweepSpec("payout", axis("P", 0, 1, 3), axis("P", 0, 1, 3))

    def test_unknown_quantity(self):
        with pytest.raises(ValueError, match="unknown quantity"):
            SweepSpec("bogus", axis("P", 0, 1, 3))

    def test_grid_shape_validation(self):
        with pytest.raises(ValueError, match="shape"):
            SweepGrid("payout", "x", (0.0, 1.0), ((1.0,),), "y", (0.0,))


class TestRunSweep:
    def test_vb_roi_cell_at_published_anchor(self, small_2d_spec):
        grid = run_sweep(small_2d_spec)
        assert grid.x_values[0] == 1.55
        assert grid.y_values[0] == 1.0
        assert grid.values[0][0] == pytest.approx(0.275424613, abs=1e-6)
        # four turns of capital crosses breakeven
        assert grid.y_values[3] == 4.0
        assert grid.values[0][3] > 1.0

    def test_uw_roi_crosses_breakeven_once(self):
        spec = SweepSpec("uw_roi_simple", axis("P", -3.0, 3.0, 601))
        grid = run_sweep(spec)
        crossings = [
            (x_lo, x_hi)
            for x_lo, x_hi, v_lo, v_hi in zip(
                grid.x_values, grid.x_values[1:], grid.values, grid.values[1:]
            )
            if math.isfinite(v_lo) and math.isfinite(v_hi) and (v_lo - 1.0) * (v_hi - 1.0) < 0
        ]
        assert len(crossings) == 1
        assert -1.46 <= crossings[0][0] <= -1.42 or -1.46 <= crossings[0][1] <= -1.42

    def test_payout_zero_above_clamp_bound(self):
        spec = SweepSpec(
            "payout", axis("P", 2.2845, 3.0, 5), axis("MOC", 1.0, 2.0, 2)
        )
        grid = run_sweep(spec)
        assert all(abs(v) < 1e-12 for v in grid.values[0])

    def test_moc_axis_overrides_params(self):
        spec = SweepSpec("vb_roi", axis("MOC", 1.0, 3.0, 3), adjustment=1.55)
        grid = run_sweep(spec)
        base = vb_earnings(1.55)
        assert grid.values == pytest.approx((base, 2 * base, 3 * base), abs=1e-12)

    def test_fraction_axes_drive_scenarios(self):
        spec = SweepSpec("uw_roi_combined", axis("frac_equity", 0.0, 0.7, 3), adjustment=2.0)
        grid = run_sweep(spec)
        assert math.isinf(grid.values[-1])

    def test_parallel_equals_serial(self, small_2d_spec):
        assert run_sweep(small_2d_spec, parallel=True) == run_sweep(small_2d_spec)

    def test_parallel_equals_serial_1d(self):
        spec = SweepSpec("uw_roi_clawback", axis("frac_clawback", 0.0, 1.0, 11))
        assert run_sweep(spec, parallel=True) == run_sweep(spec)


class TestCsv:
    def test_2x2_shape(self):
        spec = SweepSpec("payout", axis("P", 0.0, 1.0, 2), axis("MOC", 1.0, 2.0, 2))
        text = grid_to_csv_text(run_sweep(spec))
        lines = text.splitlines()
        assert lines[0] == "x,y,value"
        assert len(lines) == 5

    def test_1d_header(self):
        spec = SweepSpec("payout", axis("P", 0.0, 1.0, 3))
        lines = grid_to_csv_text(run_sweep(spec)).splitlines()
        assert lines[0] == "x,value"
        assert len(lines) == 4

    def test_infinite_cells_use_inf_token(self):
        spec = SweepSpec("uw_roi_simple", axis("P", 2.29, 3.0, 3))
        text = grid_to_csv_text(run_sweep(spec))
        assert ",inf" in text

    def test_deterministic_output(self, small_2d_spec):
        first = grid_to_csv_text(run_sweep(small_2d_spec))
        second = grid_to_csv_text(run_sweep(small_2d_spec))
        assert first == second

    def test_round_trip_values(self, tmp_path, small_2d_spec):
        grid = run_sweep(small_2d_spec)
        path = tmp_path / "grid.csv"
        path.write_text(grid_to_csv_text(grid), encoding="utf-8")
        parsed = parse_csv(path)
        assert grid_to_csv_text(parsed) == path.read_text(encoding="utf-8")

    def test_round_trip_is_bitexact_after_first_parse(self, tmp_path):
        spec = SweepSpec("uw_roi_simple", axis("P", -3.0, 3.0, 17))
        grid = run_sweep(spec)
        text = grid_to_csv_text(grid)
        parsed = parse_csv(iter_to_file(tmp_path, "a.csv", text))
        assert [format_value(v) for v in parsed.values] == [
            format_value(v) for v in grid.values
        ]

    def test_unrecognized_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError, match="header"):
            parse_csv(path)

    def test_format_value_tokens(self):
        assert format_value(math.inf) == "inf"
        assert format_value(-math.inf) == "-inf"
        assert format_value(0.25) == "0.25"


def iter_to_file(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestSvg:
    def test_line_chart(self, tmp_path):
        spec = SweepSpec("uw_roi_simple", axis("P", -3.0, 3.0, 25))
        path = tmp_path / "roi.svg"
        emit_svg(run_sweep(spec), path)
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        assert root.get("version") == "1.1"

    def test_heatmap(self, tmp_path):
        spec = SweepSpec("vb_roi", axis("P", -3.0, 3.0, 13), axis("MOC", 1.0, 47.0, 12))
        path = tmp_path / "phase.svg"
        emit_svg(run_sweep(spec), path)
        assert path.stat().st_size > 1000
        ET.parse(path)

    def test_line_style_on_2d_grid(self, tmp_path):
        spec = SweepSpec(
            "uw_roi_clawback", axis("frac_clawback", 0.0, 1.0, 9), axis("P", -2.0, 1.0, 4)
        )
        path = tmp_path / "sales.svg"
        emit_svg(run_sweep(spec), path, style="line")
        ET.parse(path)

    def test_infinite_cells_masked(self, tmp_path):
        spec = SweepSpec("uw_roi_combined", axis("P", 1.5, 3.0, 7), axis("frac_equity", 0.0, 0.7, 5))
        path = tmp_path / "inf.svg"
        emit_svg(run_sweep(spec), path)
        ET.parse(path)

    def test_heatmap_requires_2d(self, tmp_path):
        spec = SweepSpec("payout", axis("P", 0.0, 1.0, 3))
        with pytest.raises(ValueError, match="2-D"):
            emit_svg(run_sweep(spec), tmp_path / "x.svg", style="heatmap")

    def test_unknown_style(self, tmp_path):
        spec = SweepSpec("payout", axis("P", 0.0, 1.0, 3))
        with pytest.raises(ValueError, match="style"):
            emit_svg(run_sweep(spec), tmp_path / "x.svg", style="sparkline")


class TestConfig:
    def test_round_trip_identity(self, tmp_path):
        params = EdcsParams(edcs_rate=0.04, moc=7.0)
        scenario = SaleScenario(frac_clawback_sold=0.5, sale_discount_rate=0.03)
        path = tmp_path / "config.json"
        save_config(path, params, scenario)
        loaded_params, loaded_scenario = load_config(path)
        assert loaded_params == params
        assert loaded_scenario == scenario

    def test_partial_config_fills_defaults(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{"edcs_rate": 0.06}')
        params, scenario = load_config(path)
        assert params.edcs_rate == 0.06
        assert params.clawback_fraction == DEFAULT_PARAMS.clawback_fraction
        assert scenario == DEFAULT_SCENARIO

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{"edcs_rte": 0.06}')
        with pytest.raises(ValueError, match="unknown config key"):
            load_config(path)

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        with pytest.raises(ValueError, match="flat JSON object"):
            load_config(path)

    def test_dump_covers_every_field(self):
        flat = dump_config(DEFAULT_PARAMS, DEFAULT_SCENARIO)
        assert set(flat) == {
            "edcs_rate", "clawback_fraction", "equity_fraction", "vb_carry_rate",
            "uw_cost_rate", "payout_year", "exit_year", "moc",
            "frac_clawback_sold", "frac_equity_sold", "sale_discount_rate",
            "discount_horizon_years",
        }


class TestSweepSpecFile:
    def test_load(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(
            '{"quantity": "vb_roi",'
            ' "x_axis": {"name": "P", "min": -3, "max": 3, "steps": 7},'
            ' "y_axis": {"name": "MOC", "min": 1, "max": 47, "steps": 4}}'
        )
        spec = load_sweep_spec(path)
        assert spec.quantity == "vb_roi"
        assert spec.x_axis.steps == 7
        assert spec.y_axis.name == "MOC"

    def test_default_ranges(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text('{"quantity": "payout", "x_axis": {"name": "P", "steps": 5}}')
        spec = load_sweep_spec(path)
        assert (spec.x_axis.min, spec.x_axis.max) == (-3.0, 3.0)

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text('{"quantity": "payout", "x_axis": {"name": "P", "steps": 5}, "zaxis": 1}')
        with pytest.raises(ValueError, match="unknown sweep keys"):
            load_sweep_spec(path)

    def test_missing_required_keys(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text('{"quantity": "payout"}')
        with pytest.raises(ValueError, match="x_axis"):
            load_sweep_spec(path)
