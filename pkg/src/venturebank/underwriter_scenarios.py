"""Underwriter ROI under discounted sales of clawback bonds and equity futures.

Clawback liens can be securitized and sold (up to 100%) and equity futures
sold forward (capped at 70% of the underwriter's holdings). Sale proceeds are
present values discounted at a multiple of twelve-month LIBOR and reduce the
underwriter's net cost basis; the sold share of the future income leaves the
earnings numerator. Four accountings: no sales, clawback sales, equity sales,
and both combined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .edcs_core import (
    DEFAULT_PARAMS,
    EdcsParams,
    RoiResult,
    clawback_lien,
    equity_split,
    payout_with_carry,
    premiums_underwriter,
    uw_roi_simple,
)
from .returns_model import KAUFFMAN_CURVE, ExpCurveParams, net_portfolio_return

#: Cap on the share of equity futures an underwriter may sell forward.
EQUITY_SALE_CAP = 0.70

SCENARIO_KINDS = ("simple", "clawback", "equity", "combined")


@dataclass(frozen=True)
class SaleScenario:
    """Sale fractions and the discounting applied to sale proceeds.

    The default discount rate is 1.5x a twelve-month LIBOR of 3.1%; both
    asset classes discount over the payout-to-exit gap of five years.
    """

    frac_clawback_sold: float = 0.0
    frac_equity_sold: float = 0.0
    sale_discount_rate: float = 0.0465
    discount_horizon_years: float = 5.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.frac_clawback_sold <= 1.0:
            raise ValueError(
                f"frac_clawback_sold must be in [0, 1], got {self.frac_clawback_sold}"
            )
        if not 0.0 <= self.frac_equity_sold <= EQUITY_SALE_CAP:
            raise ValueError(
                f"frac_equity_sold must be in [0, {EQUITY_SALE_CAP}], got {self.frac_equity_sold}"
            )
        if self.sale_discount_rate < 0 or self.discount_horizon_years < 0:
            raise ValueError("discount rate and horizon must be >= 0")

    @property
    def discount_factor(self) -> float:
        return (1.0 + self.sale_discount_rate) ** self.discount_horizon_years


DEFAULT_SCENARIO = SaleScenario()


@dataclass(frozen=True)
class BreakevenResult:
    """Root of ROI(adjustment) = 1 plus the portfolio return it corresponds to."""

    adjustment: float
    net_portfolio_return: float


def discounted_sale(amount: float, frac: float, scenario: SaleScenario) -> float:
    """Present value received for selling ``frac`` of a future ``amount``."""
    if amount < 0:
        raise ValueError(f"amount must be >= 0, got {amount}")
    if not 0.0 <= frac <= 1.0:
        raise ValueError(f"frac must be in [0, 1], got {frac}")
    return amount * frac / scenario.discount_factor


def uw_roi_clawback_sales(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> RoiResult:
    """ROI with a fraction of clawback liens sold off as discounted bonds."""
    frac = scenario.frac_clawback_sold
    clawback = clawback_lien(adjustment, params, curve)
    uw_eq, _ = equity_split(adjustment, params, curve)
    numerator = (
        premiums_underwriter(adjustment, params, curve).total
        + uw_eq
        + (1.0 - frac) * clawback
    )
    denominator = payout_with_carry(adjustment, params, curve) - discounted_sale(
        clawback, frac, scenario
    )
    return RoiResult(numerator, denominator)


def uw_roi_equity_sales(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> RoiResult:
    """ROI with a fraction of the underwriter's equity futures sold forward."""
    frac = scenario.frac_equity_sold
    uw_eq, _ = equity_split(adjustment, params, curve)
    numerator = (
        premiums_underwriter(adjustment, params, curve).total
        + clawback_lien(adjustment, params, curve)
        + (1.0 - frac) * uw_eq
    )
    denominator = payout_with_carry(adjustment, params, curve) - discounted_sale(
        uw_eq, frac, scenario
    )
    return RoiResult(numerator, denominator)


def uw_roi_combined(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> RoiResult:
    """ROI with both clawback bonds and equity futures sold."""
    clawback = clawback_lien(adjustment, params, curve)
    uw_eq, _ = equity_split(adjustment, params, curve)
    numerator = (
        premiums_underwriter(adjustment, params, curve).total
        + (1.0 - scenario.frac_clawback_sold) * clawback
        + (1.0 - scenario.frac_equity_sold) * uw_eq
    )
    denominator = (
        payout_with_carry(adjustment, params, curve)
        - discounted_sale(clawback, scenario.frac_clawback_sold, scenario)
        - discounted_sale(uw_eq, scenario.frac_equity_sold, scenario)
    )
    return RoiResult(numerator, denominator)


def scenario_roi(
    kind: str,
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> RoiResult:
    """Dispatch one of the four ROI accountings by name."""
    if kind == "simple":
        return uw_roi_simple(adjustment, params, curve)
    if kind == "clawback":
        return uw_roi_clawback_sales(adjustment, params, scenario, curve)
    if kind == "equity":
        return uw_roi_equity_sales(adjustment, params, scenario, curve)
    if kind == "combined":
        return uw_roi_combined(adjustment, params, scenario, curve)
    raise ValueError(f"unknown scenario kind {kind!r}; expected one of {SCENARIO_KINDS}")


def bisect_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-6,
    max_iter: int = 200,
) -> float:
    """Bisection root of fn on [lo, hi]; requires a sign change."""
    if lo >= hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo < 0) == (f_hi < 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= xtol:
            break
    return 0.5 * (lo + hi)


def breakeven_adjustment(
    kind: str | Callable[[float], float],
    params: EdcsParams = DEFAULT_PARAMS,
    scenario: SaleScenario = DEFAULT_SCENARIO,
    interval: tuple[float, float] = (-3.0, 0.0),
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> BreakevenResult:
    """Portfolio adjustment where the chosen ROI accounting crosses 1.

    ``kind`` names one of the four accountings, or is a callable giving the
    ROI directly (used to test the root plumbing in isolation). Also reports
    the floored portfolio return at the root, which is what the breakeven
    means in actual-return terms.
    """
    if callable(kind):
        roi_fn = kind
    else:
        def roi_fn(adjustment: float) -> float:
            return scenario_roi(kind, adjustment, params, scenario, curve).as_float()

    root = bisect_root(lambda a: roi_fn(a) - 1.0, interval[0], interval[1])
    return BreakevenResult(root, net_portfolio_return(root, curve))
