"""Command-line interface: stats, fits, deal evaluation, sweeps, and ledgers.

Exit codes: 0 success, 1 usage error, 2 computation or I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .dataset import adjust_for_carry, dataset_stats, load_dataset
from .edcs_core import DEFAULT_PARAMS, deal_components
from .ledger import (
    castle_vc_counterfactual,
    castle_venture_bank,
    counterfactual_breakeven_multiple,
    simplified_walkthrough,
)
from .returns_model import fit_exponential, fit_poly7, intercepts, poly_integral
from .sweep import (
    QUANTITIES,
    emit_svg,
    evaluate_quantity,
    format_value,
    grid_to_csv_text,
    load_config,
    load_sweep_spec,
    run_sweep,
)
from .underwriter_scenarios import (
    DEFAULT_SCENARIO,
    SCENARIO_KINDS,
    SaleScenario,
    breakeven_adjustment,
    scenario_roi,
)

_fmt = format_value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat JSON parameter file")
    common.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="venturebank",
        description="Venture-banking EDCS economics: curves, deals, scenarios, ledgers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="dataset summary statistics")
    p.add_argument("dataset", help="built-in name or CSV path")

    p = sub.add_parser("fit", parents=[common], help="fit a return curve to a dataset")
    p.add_argument("dataset", help="built-in name or CSV path")
    p.add_argument("--model", choices=("exp", "poly7"), default="exp")

    p = sub.add_parser("eval", parents=[common], help="evaluate one quantity at an adjustment")
    p.add_argument("--P", type=float, required=True, dest="adjustment",
                   help="portfolio adjustment")
    p.add_argument("--quantity", choices=QUANTITIES, default=None,
                   help="quantity to evaluate (default: all)")

    p = sub.add_parser("deal", parents=[common], help="dump every deal component")
    p.add_argument("--P", type=float, required=True, dest="adjustment")

    p = sub.add_parser("sweep", parents=[common], help="evaluate a grid and emit CSV + figure")
    p.add_argument("--spec", required=True, metavar="PATH", help="sweep spec JSON")
    p.add_argument("--style", choices=("line", "heatmap"), default=None)
    p.add_argument("--parallel", action="store_true", help="evaluate rows concurrently")
    p.add_argument("--no-figure", action="store_true", help="skip the SVG figure")

    p = sub.add_parser("scenario", parents=[common], help="underwriter ROI under asset sales")
    p.add_argument("--P", type=float, required=True, dest="adjustment")
    p.add_argument("--frac-cb", type=float, default=0.0, help="fraction of clawbacks sold")
    p.add_argument("--frac-eq", type=float, default=0.0, help="fraction of equity futures sold")

    p = sub.add_parser("breakeven", parents=[common], help="find where an ROI accounting crosses 1")
    p.add_argument("--scenario", choices=SCENARIO_KINDS, default="simple")
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=0.0)
    p.add_argument("--frac-cb", type=float, default=0.0)
    p.add_argument("--frac-eq", type=float, default=0.0)

    p = sub.add_parser("castle", parents=[common], help="the toy castle deal, double-entry")
    p.add_argument("--vc-counterfactual", action="store_true",
                   help="the same deal on a conventional bank loan")
    p.add_argument("--loan-cents", type=int, default=100_000_000)
    p.add_argument("--valuation-fraction", type=float, default=0.5)

    p = sub.add_parser("walkthrough", parents=[common], help="simplified even-split deal arithmetic")
    p.add_argument("--payout-fraction", type=float, default=0.1361)
    p.add_argument("--positive-exit-equity", type=float, default=1.028089)
    p.add_argument("--portfolio-multiple", type=float, default=1.3875)

    return parser


def _load_settings(args) -> tuple:
    if getattr(args, "config", None):
        return load_config(args.config)
    return DEFAULT_PARAMS, DEFAULT_SCENARIO


def _deliver(text: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_stats(args) -> int:
    ds = load_dataset(args.dataset)
    stats = dataset_stats(ds)
    lines = [
        f"dataset        {ds.label}",
        f"count          {stats.count}",
        f"mean           {_fmt(stats.mean)}",
        "octile means   " + "  ".join(_fmt(v) for v in stats.octile_means),
        "quartile means " + "  ".join(_fmt(v) for v in stats.quartile_means),
    ]
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _cmd_fit(args) -> int:
    ds = load_dataset(args.dataset)
    stats = dataset_stats(ds)
    if args.model == "exp":
        scale, rate = fit_exponential(ds)
        integral = scale / rate * (math.exp(rate) - 1.0)
        lines = [
            "model     exponential  scale*exp(rate*h)",
            f"scale     {_fmt(scale)}",
            f"rate      {_fmt(rate)}",
            f"integral  {_fmt(integral)}  (dataset mean {_fmt(stats.mean)})",
        ]
    else:
        poly = fit_poly7(ds)
        integral = poly_integral(poly, 0.0, 1.0)
        lines = ["model     degree-7 polynomial"]
        lines += [f"c{i}        {_fmt(c)}" for i, c in enumerate(poly.coefficients)]
        lines.append(f"integral  {_fmt(integral)}  (dataset mean {_fmt(stats.mean)})")
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _quantity_lines(adjustment: float, params, scenario, only: str | None) -> list[str]:
    names = [only] if only else list(QUANTITIES)
    return [
        f"{name:15s} {_fmt(evaluate_quantity(name, adjustment, params, scenario))}"
        for name in names
    ]


def _cmd_eval(args) -> int:
    params, scenario = _load_settings(args)
    lines = _quantity_lines(args.adjustment, params, scenario, args.quantity)
    pair = intercepts(args.adjustment)
    lines.append(f"{'intercept_zero':15s} {_fmt(pair.h_zero)}{' (clamped)' if pair.clamped_zero else ''}")
    lines.append(f"{'intercept_one':15s} {_fmt(pair.h_one)}{' (clamped)' if pair.clamped_one else ''}")
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _cmd_deal(args) -> int:
    params, _ = _load_settings(args)
    deal = deal_components(args.adjustment, params)
    lines = [
        f"adjustment               {_fmt(deal.adjustment)}",
        f"payout                   {_fmt(deal.payout)}",
        f"payout_with_carry        {_fmt(deal.payout_with_carry)}",
        f"clawback                 {_fmt(deal.clawback)}",
        f"premiums_uw_from_losers  {_fmt(deal.premiums_uw_from_losers)}",
        f"premiums_uw_from_winners {_fmt(deal.premiums_uw_from_winners)}",
        f"premiums_uw_total        {_fmt(deal.premiums_uw_total)}",
        f"premiums_vb_carried      {_fmt(deal.premiums_vb_carried)}",
        f"uw_equity                {_fmt(deal.uw_equity)}",
        f"vb_equity                {_fmt(deal.vb_equity)}",
        f"vb_earnings              {_fmt(deal.vb_earnings)}",
        f"vb_roi                   {_fmt(deal.vb_roi)}",
        f"uw_earnings              {_fmt(deal.uw_earnings)}",
        f"uw_roi                   {_fmt(deal.uw_roi)}",
        f"net_portfolio_return     {_fmt(deal.net_portfolio_return)}",
    ]
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _cmd_sweep(args) -> int:
    params, scenario = _load_settings(args)
    spec = load_sweep_spec(args.spec, params, scenario)
    grid = run_sweep(spec, parallel=args.parallel)
    text = grid_to_csv_text(grid)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        messages = [f"wrote {args.out}"]
        if not args.no_figure:
            figure_path = Path(args.out).with_suffix(".svg")
            emit_svg(grid, figure_path, style=args.style)
            messages.append(f"wrote {figure_path}")
        print("\n".join(messages))
    else:
        sys.stdout.write(text)
    return 0


def _cmd_scenario(args) -> int:
    params, scenario = _load_settings(args)
    scenario = SaleScenario(
        frac_clawback_sold=args.frac_cb,
        frac_equity_sold=args.frac_eq,
        sale_discount_rate=scenario.sale_discount_rate,
        discount_horizon_years=scenario.discount_horizon_years,
    )
    lines = []
    for kind in SCENARIO_KINDS:
        roi = scenario_roi(kind, args.adjustment, params, scenario)
        shown = "inf" if roi.infinite else _fmt(roi.numerator / roi.denominator)
        lines.append(
            f"{kind:9s} roi={shown}  numerator={_fmt(roi.numerator)}"
            f"  denominator={_fmt(roi.denominator)}"
        )
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _cmd_breakeven(args) -> int:
    params, scenario = _load_settings(args)
    scenario = SaleScenario(
        frac_clawback_sold=args.frac_cb,
        frac_equity_sold=args.frac_eq,
        sale_discount_rate=scenario.sale_discount_rate,
        discount_horizon_years=scenario.discount_horizon_years,
    )
    result = breakeven_adjustment(args.scenario, params, scenario, (args.lo, args.hi))
    roi = scenario_roi(args.scenario, result.adjustment, params, scenario)
    lines = [
        f"scenario              {args.scenario}",
        f"breakeven adjustment  {_fmt(result.adjustment)}",
        f"net portfolio return  {_fmt(result.net_portfolio_return)}",
        f"roi at root           {_fmt(roi.as_float())}",
    ]
    _deliver("\n".join(lines) + "\n", args)
    return 0


def _cmd_castle(args) -> int:
    params, _ = _load_settings(args)
    if args.vc_counterfactual:
        ledger, report = castle_vc_counterfactual(
            params, args.loan_cents, args.valuation_fraction
        )
        multiple = counterfactual_breakeven_multiple(params, args.loan_cents)
    else:
        ledger, report = castle_venture_bank(
            args.loan_cents, args.valuation_fraction, params
        )
        multiple = None

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            ledger.to_csv(fh)

    lines = [
        f"{'party':14s} {'year':>4s} {'amount':>15s}  description",
    ]
    for entry in ledger.entries():
        lines.append(
            f"{entry.party:14s} {entry.year:4d} {entry.amount / 100:15,.2f}  "
            f"{entry.description} [{entry.kind}]"
        )
    display = report.display_dollars()
    lines += [
        "",
        f"net (exact cents): vb={report.vb_net} uw={report.uw_net}"
        f" interest={report.external_interest} value_created={report.value_created}",
        f"venture bank gain    $ {display[0]:,}",
        f"underwriter gain     $ {display[1]:,}",
        f"interest paid        $ {display[2]:,}",
        f"value created        $ {display[3]:,}",
    ]
    if multiple is not None:
        lines.append(f"breakeven multiple   {_fmt(multiple)}")
    print("\n".join(lines))
    return 0


def _cmd_walkthrough(args) -> int:
    params, _ = _load_settings(args)
    report = simplified_walkthrough(
        params,
        payout_fraction=args.payout_fraction,
        positive_exit_equity=args.positive_exit_equity,
        portfolio_multiple=args.portfolio_multiple,
    )
    lines = [
        f"premium rate, winners      {_fmt(report.premium_rate_winners)}",
        f"premium rate, losers       {_fmt(report.premium_rate_losers)}",
        f"premium cost per turn      {_fmt(report.premium_cost)}",
        f"payouts received           {_fmt(report.payout_fraction)}",
        f"underwriter equity         {_fmt(report.uw_equity)}",
        f"equity remainder           {_fmt(report.vb_equity_remainder)}",
        f"after premiums             {_fmt(report.after_premiums)}",
        f"clawback payback           {_fmt(report.clawback_payback)}",
        f"net per turn               {_fmt(report.net_per_turn)}",
        "",
    ]
    lines += [f"MOC {int(m):2d} -> {_fmt(v)}" for m, v in report.moc_table]
    lines += [
        "",
        f"underwriter premium income {_fmt(report.uw_premium_income)}",
        f"underwriter carry cost     {_fmt(report.uw_carry_cost)}",
        f"underwriter earnings       {_fmt(report.uw_earnings_pct)}",
        f"underwriter ROI multiplier {_fmt(report.uw_roi_multiplier)}",
    ]
    _deliver("\n".join(lines) + "\n", args)
    return 0


_HANDLERS = {
    "stats": _cmd_stats,
    "fit": _cmd_fit,
    "eval": _cmd_eval,
    "deal": _cmd_deal,
    "sweep": _cmd_sweep,
    "scenario": _cmd_scenario,
    "breakeven": _cmd_breakeven,
    "castle": _cmd_castle,
    "walkthrough": _cmd_walkthrough,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"venturebank: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
