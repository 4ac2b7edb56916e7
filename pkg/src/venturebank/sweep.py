"""Parameter sweeps over the deal economics, with CSV and SVG figure output.

A sweep evaluates one quantity over a 1-D or 2-D grid of axis values
(portfolio adjustment, capital multiple, or sale fractions). Grids serialize
to a flat CSV (``x[,y],value`` with 12 significant digits and an ``inf``
token) and render to standalone SVG figures: a line chart for 1-D sweeps or
per-column lines on 2-D ones, and a heatmap with a breakeven contour for 2-D.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import IO

from .edcs_core import (
    DEFAULT_PARAMS,
    EdcsParams,
    clawback_lien,
    edcs_payout,
    premiums_underwriter,
    vb_earnings,
)
from .returns_model import net_portfolio_return
from .underwriter_scenarios import DEFAULT_SCENARIO, SaleScenario, scenario_roi

AXES = ("P", "MOC", "frac_clawback", "frac_equity")
QUANTITIES = (
    "vb_roi",
    "vb_earnings",
    "uw_roi_simple",
    "uw_roi_clawback",
    "uw_roi_equity",
    "uw_roi_combined",
    "payout",
    "clawback",
    "premiums",
    "net_return",
)

#: Default axis ranges mirroring the published figures.
DEFAULT_RANGES = {
    "P": (-3.0, 3.0),
    "MOC": (1.0, 47.0),
    "frac_clawback": (0.0, 1.0),
    "frac_equity": (0.0, 0.7),
}

_FLOAT_FORMAT = "%.12g"


def format_value(value: float) -> str:
    """Decimal text at 12 significant digits; infinities as the ``inf`` token."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return _FLOAT_FORMAT % value


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis: which knob to turn and the grid over it."""

    name: str
    min: float
    max: float
    steps: int

    def __post_init__(self) -> None:
        if self.name not in AXES:
            raise ValueError(f"unknown axis {self.name!r}; expected one of {AXES}")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not self.min < self.max:
            raise ValueError(f"need min < max, got [{self.min}, {self.max}]")

    def values(self) -> tuple[float, ...]:
        span = self.max - self.min
        return tuple(self.min + i * span / (self.steps - 1) for i in range(self.steps))


@dataclass(frozen=True)
class SweepSpec:
    """A quantity evaluated over one or two axes, from a base parameter set."""

    quantity: str
    x_axis: AxisSpec
    y_axis: AxisSpec | None = None
    adjustment: float = 1.55
    params: EdcsParams = DEFAULT_PARAMS
    scenario: SaleScenario = DEFAULT_SCENARIO

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}; expected one of {QUANTITIES}")
        if self.y_axis is not None and self.y_axis.name == self.x_axis.name:
            raise ValueError(f"x and y axes must differ, both are {self.x_axis.name!r}")


@dataclass(frozen=True)
class SweepGrid:
    """Evaluated sweep values; rows indexed by x, columns by y."""

    quantity: str
    x_name: str
    x_values: tuple[float, ...]
    values: tuple
    y_name: str | None = None
    y_values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.is_2d:
            if len(self.values) != len(self.x_values) or any(
                len(row) != len(self.y_values) for row in self.values
            ):
                raise ValueError("grid shape does not match axis step counts")
        elif len(self.values) != len(self.x_values):
            raise ValueError("grid length does not match x axis step count")

    @property
    def is_2d(self) -> bool:
        return self.y_values is not None


def evaluate_quantity(
    quantity: str,
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
) -> float:
    """One sweep quantity at one point; infinite ROIs come back as ``inf``."""
    if quantity == "payout":
        return edcs_payout(adjustment, params)
    if quantity == "clawback":
        return clawback_lien(adjustment, params)
    if quantity == "premiums":
        return premiums_underwriter(adjustment, params).total
    if quantity == "net_return":
        return net_portfolio_return(adjustment)
    if quantity == "vb_earnings":
        return vb_earnings(adjustment, params)
    if quantity == "vb_roi":
        return vb_earnings(adjustment, params) * params.moc
    if quantity.startswith("uw_roi_"):
        kind = quantity.removeprefix("uw_roi_")
        return scenario_roi(kind, adjustment, params, scenario).as_float()
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def _evaluate(spec: SweepSpec, overrides: dict[str, float]) -> float:
    adjustment = overrides.get("P", spec.adjustment)
    params = spec.params
    scenario = spec.scenario
    if "MOC" in overrides:
        params = replace(params, moc=overrides["MOC"])
    if "frac_clawback" in overrides:
        scenario = replace(scenario, frac_clawback_sold=overrides["frac_clawback"])
    if "frac_equity" in overrides:
        scenario = replace(scenario, frac_equity_sold=overrides["frac_equity"])
    return evaluate_quantity(spec.quantity, adjustment, params, scenario)


def run_sweep(spec: SweepSpec, parallel: bool = False) -> SweepGrid:
    """Evaluate the spec's quantity at every grid point.

    Cells are pure and independent; ``parallel`` fans rows out over a thread
    pool and must produce the identical grid.
    """
    x_values = spec.x_axis.values()
    if spec.y_axis is None:
        def cell(x: float) -> float:
            return _evaluate(spec, {spec.x_axis.name: x})

        if parallel:
            with ThreadPoolExecutor() as pool:
                values = tuple(pool.map(cell, x_values))
        else:
            values = tuple(cell(x) for x in x_values)
        return SweepGrid(spec.quantity, spec.x_axis.name, x_values, values)

    y_values = spec.y_axis.values()

    def row(x: float) -> tuple[float, ...]:
        return tuple(
            _evaluate(spec, {spec.x_axis.name: x, spec.y_axis.name: y}) for y in y_values
        )

    if parallel:
        with ThreadPoolExecutor() as pool:
            rows = tuple(pool.map(row, x_values))
    else:
        rows = tuple(row(x) for x in x_values)
    return SweepGrid(
        spec.quantity, spec.x_axis.name, x_values, rows, spec.y_axis.name, y_values
    )


def emit_csv(grid: SweepGrid, out: IO[str]) -> None:
    """Write ``x,y,value`` rows (or ``x,value`` for 1-D sweeps)."""
    writer = csv.writer(out, lineterminator="\n")
    if grid.is_2d:
        writer.writerow(["x", "y", "value"])
        for x, row in zip(grid.x_values, grid.values):
            for y, value in zip(grid.y_values, row):
                writer.writerow([format_value(x), format_value(y), format_value(value)])
    else:
        writer.writerow(["x", "value"])
        for x, value in zip(grid.x_values, grid.values):
            writer.writerow([format_value(x), format_value(value)])


def parse_csv(source: IO[str] | str | Path, quantity: str = "value") -> SweepGrid:
    """Read a grid back from its CSV form. Axis names are not stored in the
    file, so they come back as the generic header names."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_csv(fh, quantity)
    reader = csv.reader(source)
    header = next(reader, None)
    if header == ["x", "value"]:
        xs, values = [], []
        for row in reader:
            xs.append(float(row[0]))
            values.append(float(row[1]))
        return SweepGrid(quantity, "x", tuple(xs), tuple(values))
    if header == ["x", "y", "value"]:
        xs: list[float] = []
        ys: list[float] = []
        cells: dict[tuple[float, float], float] = {}
        for row in reader:
            x, y, value = float(row[0]), float(row[1]), float(row[2])
            if x not in xs:
                xs.append(x)
            if y not in ys:
                ys.append(y)
            cells[(x, y)] = value
        rows = tuple(tuple(cells[(x, y)] for y in ys) for x in xs)
        return SweepGrid(quantity, "x", tuple(xs), rows, "y", tuple(ys))
    raise ValueError(f"unrecognized CSV header {header!r}")


def grid_to_csv_text(grid: SweepGrid) -> str:
    buffer = io.StringIO()
    emit_csv(grid, buffer)
    return buffer.getvalue()


def emit_svg(
    grid: SweepGrid,
    path: str | Path,
    style: str | None = None,
    reference: float | None = 1.0,
) -> None:
    """Render the grid to a standalone SVG figure.

    1-D grids draw a single line; 2-D grids draw either a heatmap with a
    contour at the ``reference`` level or, with ``style="line"``, one line
    per y value. The reference line marks breakeven by default.
    """
    import numpy as np
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if style is None:
        style = "heatmap" if grid.is_2d else "line"
    if style not in ("line", "heatmap"):
        raise ValueError(f"unknown style {style!r}; expected 'line' or 'heatmap'")
    if style == "heatmap" and not grid.is_2d:
        raise ValueError("heatmap style needs a 2-D grid")

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    xs = np.asarray(grid.x_values)
    try:
        if not grid.is_2d:
            values = np.ma.masked_invalid(np.asarray(grid.values))
            ax.plot(xs, values, color="#1f3b73", linewidth=1.5)
            if reference is not None:
                ax.axhline(reference, color="#4878cf", linewidth=0.8, linestyle="--")
            ax.set_ylabel(grid.quantity)
        elif style == "line":
            values = np.ma.masked_invalid(np.asarray(grid.values))
            for j, y in enumerate(grid.y_values):
                ax.plot(xs, values[:, j], linewidth=1.0, label=f"{grid.y_name}={y:g}")
            if reference is not None:
                ax.axhline(reference, color="#4878cf", linewidth=0.8, linestyle="--")
            if len(grid.y_values) <= 10:
                ax.legend(fontsize=7, frameon=False)
            ax.set_ylabel(grid.quantity)
        else:
            ys = np.asarray(grid.y_values)
            values = np.ma.masked_invalid(np.asarray(grid.values, dtype=float))
            mesh = ax.pcolormesh(xs, ys, values.T, shading="nearest", cmap="viridis")
            fig.colorbar(mesh, ax=ax, label=grid.quantity)
            if reference is not None and values.count() and values.min() < reference < values.max():
                ax.contour(xs, ys, values.T, levels=[reference], colors="white", linewidths=1.0)
            ax.set_ylabel(grid.y_name)
        ax.set_xlabel(grid.x_name)
        ax.set_title(grid.quantity)
        fig.tight_layout()
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)


def _field_names(cls) -> tuple[str, ...]:
    return tuple(f.name for f in fields(cls))


def dump_config(params: EdcsParams, scenario: SaleScenario) -> dict[str, float]:
    """Flatten every parameter field into one key-value mapping."""
    out: dict[str, float] = {}
    for name in _field_names(EdcsParams):
        out[name] = getattr(params, name)
    for name in _field_names(SaleScenario):
        out[name] = getattr(scenario, name)
    return out


def save_config(path: str | Path, params: EdcsParams, scenario: SaleScenario) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_config(params, scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_config(path: str | Path) -> tuple[EdcsParams, SaleScenario]:
    """Read a flat parameter file; unknown keys are hard errors."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a flat JSON object")
    param_names = set(_field_names(EdcsParams))
    scenario_names = set(_field_names(SaleScenario))
    params_kw: dict[str, float] = {}
    scenario_kw: dict[str, float] = {}
    for key, value in raw.items():
        if key in param_names:
            params_kw[key] = float(value)
        elif key in scenario_names:
            scenario_kw[key] = float(value)
        else:
            raise ValueError(f"{path}: unknown config key {key!r}")
    return replace(DEFAULT_PARAMS, **params_kw), replace(DEFAULT_SCENARIO, **scenario_kw)


def load_sweep_spec(
    path: str | Path,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
) -> SweepSpec:
    """Read sweep geometry (quantity, axes, base adjustment) from JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    allowed = {"quantity", "x_axis", "y_axis", "adjustment"}
    unknown = set(raw) - allowed
    if unknown:
        raise ValueError(f"{path}: unknown sweep keys {sorted(unknown)}")
    if "quantity" not in raw or "x_axis" not in raw:
        raise ValueError(f"{path}: sweep spec needs 'quantity' and 'x_axis'")

    def axis(obj) -> AxisSpec:
        extra = set(obj) - {"name", "min", "max", "steps"}
        if extra:
            raise ValueError(f"{path}: unknown axis keys {sorted(extra)}")
        name = obj["name"]
        lo, hi = DEFAULT_RANGES.get(name, (0.0, 1.0))
        return AxisSpec(
            name=name,
            min=float(obj.get("min", lo)),
            max=float(obj.get("max", hi)),
            steps=int(obj["steps"]),
        )

    return SweepSpec(
        quantity=raw["quantity"],
        x_axis=axis(raw["x_axis"]),
        y_axis=axis(raw["y_axis"]) if raw.get("y_axis") else None,
        adjustment=float(raw.get("adjustment", 1.55)),
        params=params,
        scenario=scenario,
    )
