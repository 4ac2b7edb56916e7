"""Per-deal EDCS economics, everything expressed as fractions of loan principal.

The venture-bank writes investment loans covered by equity default clawback
swaps. Losing investments (curve below breakeven) trigger a payout at the
payout year; the underwriter takes their equity and places a clawback lien on
the bank. Winners run to the exit year and split their equity with the
underwriter. All quantities below integrate the return curve between its
clamped zero/one intercepts, so they are closed-form in the curve
antiderivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .returns_model import (
    KAUFFMAN_CURVE,
    ExpCurveParams,
    curve_integral,
    intercept_one,
    intercept_zero,
    net_portfolio_return,
)

#: Denominators at or below this are reported as infinite ROI, not divided.
ROI_DENOMINATOR_EPS = 1e-12


@dataclass(frozen=True)
class EdcsParams:
    """Contract rates and timing shared by every deal computation.

    ``vb_carry_rate`` is the venture-bank's cost of borrowed money (premiums
    are financed), ``uw_cost_rate`` the underwriter's cost of carrying payouts
    from the payout year to the exit year.
    """

    edcs_rate: float = 0.05
    clawback_fraction: float = 0.77
    equity_fraction: float = 0.5
    vb_carry_rate: float = 0.02
    uw_cost_rate: float = 0.021
    payout_year: float = 5.0
    exit_year: float = 10.0
    moc: float = 1.0

    def __post_init__(self) -> None:
        if self.edcs_rate < 0 or self.vb_carry_rate < 0 or self.uw_cost_rate < 0:
            raise ValueError("rates must be >= 0")
        if not 0.0 <= self.clawback_fraction <= 1.0:
            raise ValueError(f"clawback_fraction must be in [0, 1], got {self.clawback_fraction}")
        if not 0.0 <= self.equity_fraction <= 1.0:
            raise ValueError(f"equity_fraction must be in [0, 1], got {self.equity_fraction}")
        if not 0.0 < self.payout_year < self.exit_year:
            raise ValueError("need 0 < payout_year < exit_year")
        if self.moc < 0:
            raise ValueError(f"moc must be >= 0, got {self.moc}")


DEFAULT_PARAMS = EdcsParams()


class UnderwriterPremiums(NamedTuple):
    """Premium income split by contract life: losers stop at the payout year."""

    from_losers: float
    from_winners: float
    total: float


@dataclass(frozen=True)
class RoiResult:
    """Return-on-investment ratio that survives a vanishing cost basis."""

    numerator: float
    denominator: float

    @property
    def infinite(self) -> bool:
        return self.denominator <= ROI_DENOMINATOR_EPS

    @property
    def value(self) -> float | None:
        return None if self.infinite else self.numerator / self.denominator

    def as_float(self) -> float:
        return math.inf if self.infinite else self.numerator / self.denominator


@dataclass(frozen=True)
class DealComponents:
    """Every per-unit-principal quantity for one portfolio adjustment."""

    adjustment: float
    payout: float
    payout_with_carry: float
    clawback: float
    premiums_uw_from_losers: float
    premiums_uw_from_winners: float
    premiums_uw_total: float
    premiums_vb_carried: float
    uw_equity: float
    vb_equity: float
    vb_earnings: float
    vb_roi: float
    uw_earnings: float
    uw_roi: float
    net_portfolio_return: float


def edcs_payout(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Total payouts as a fraction of principal: shortfall below breakeven.

    Integrates (1 - floored curve) from 0 to the breakeven intercept. Below
    the zero intercept the floored curve is 0 and the whole principal is paid
    out, which contributes the intercept itself as an additive term.
    """
    h_zero = intercept_zero(adjustment, curve)
    h_one = intercept_one(adjustment, curve)
    at = ExpCurveParams(curve.scale, curve.rate, curve.baseline, adjustment)
    return h_zero + (h_one - h_zero) - curve_integral(at, h_zero, h_one)


def payout_with_carry(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Payout plus the underwriter's cost of money carrying it to exit."""
    factor = (1.0 + params.uw_cost_rate) ** params.payout_year
    return factor * edcs_payout(adjustment, params, curve)


def clawback_lien(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Lien on the venture-bank: a fixed fraction of the net payout."""
    return params.clawback_fraction * edcs_payout(adjustment, params, curve)


def premiums_underwriter(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> UnderwriterPremiums:
    """Premium income: losers pay to the payout year, winners to the exit year."""
    h_one = intercept_one(adjustment, curve)
    from_losers = h_one * params.edcs_rate * params.payout_year
    from_winners = (1.0 - h_one) * params.edcs_rate * params.exit_year
    return UnderwriterPremiums(from_losers, from_winners, from_losers + from_winners)


def _carry_factor(rate: float, years: float) -> float:
    # Integral of (1+r)^(years - t) dt over [0, years]; the zero-rate limit
    # is the plain year count.
    if rate == 0.0:
        return years
    return ((1.0 + rate) ** years - 1.0) / math.log1p(rate)


def premiums_vb_carried(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Premium cost to the venture-bank including financing carry.

    Premiums are paid continuously from borrowed money; each payment accrues
    interest until the end of its contract term.
    """
    h_one = intercept_one(adjustment, curve)
    rate = params.edcs_rate
    loser_leg = h_one * rate * _carry_factor(params.vb_carry_rate, params.payout_year)
    winner_leg = (1.0 - h_one) * rate * _carry_factor(params.vb_carry_rate, params.exit_year)
    return loser_leg + winner_leg


def equity_split(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> tuple[float, float]:
    """(underwriter share, venture-bank share) of positive-exit equity.

    Only winners owe the underwriter equity; losers' equity already went over
    with the payout, so the integral starts at the breakeven intercept.
    """
    h_one = intercept_one(adjustment, curve)
    at = ExpCurveParams(curve.scale, curve.rate, curve.baseline, adjustment)
    total = curve_integral(at, h_one, 1.0) if h_one < 1.0 else 0.0
    uw = params.equity_fraction * total
    return uw, total - uw


def vb_earnings(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Venture-bank net per turn of capital: equity + payouts - premiums - clawback."""
    _, vb_eq = equity_split(adjustment, params, curve)
    return (
        vb_eq
        + edcs_payout(adjustment, params, curve)
        - premiums_vb_carried(adjustment, params, curve)
        - clawback_lien(adjustment, params, curve)
    )


def vb_roi(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Earnings scaled by the bank's multiple of original capital."""
    return vb_earnings(adjustment, params, curve) * params.moc


def uw_earnings(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> float:
    """Underwriter net per deal: premiums + equity + clawback - carried payouts."""
    uw_eq, _ = equity_split(adjustment, params, curve)
    return (
        premiums_underwriter(adjustment, params, curve).total
        + uw_eq
        + clawback_lien(adjustment, params, curve)
        - payout_with_carry(adjustment, params, curve)
    )


def uw_roi_simple(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> RoiResult:
    """Underwriter gross income over carried payout cost, no asset sales."""
    uw_eq, _ = equity_split(adjustment, params, curve)
    numerator = (
        premiums_underwriter(adjustment, params, curve).total
        + uw_eq
        + clawback_lien(adjustment, params, curve)
    )
    return RoiResult(numerator, payout_with_carry(adjustment, params, curve))


def deal_components(
    adjustment: float,
    params: EdcsParams = DEFAULT_PARAMS,
    curve: ExpCurveParams = KAUFFMAN_CURVE,
) -> DealComponents:
    """Evaluate every deal quantity at one portfolio adjustment."""
    payout = edcs_payout(adjustment, params, curve)
    carried = (1.0 + params.uw_cost_rate) ** params.payout_year * payout
    clawback = params.clawback_fraction * payout
    premiums = premiums_underwriter(adjustment, params, curve)
    premiums_vb = premiums_vb_carried(adjustment, params, curve)
    uw_eq, vb_eq = equity_split(adjustment, params, curve)
    vb_net = vb_eq + payout - premiums_vb - clawback
    uw_net = premiums.total + uw_eq + clawback - carried
    roi = RoiResult(premiums.total + uw_eq + clawback, carried)
    return DealComponents(
        adjustment=adjustment,
        payout=payout,
        payout_with_carry=carried,
        clawback=clawback,
        premiums_uw_from_losers=premiums.from_losers,
        premiums_uw_from_winners=premiums.from_winners,
        premiums_uw_total=premiums.total,
        premiums_vb_carried=premiums_vb,
        uw_equity=uw_eq,
        vb_equity=vb_eq,
        vb_earnings=vb_net,
        vb_roi=vb_net * params.moc,
        uw_earnings=uw_net,
        uw_roi=roi.as_float(),
        net_portfolio_return=net_portfolio_return(adjustment, curve),
    )
