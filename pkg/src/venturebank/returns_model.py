"""Return curves over the portfolio quantile axis.

Funds are sorted by return multiple and indexed by a quantile coordinate
h in [0, 1]. The working model is a shifted exponential

    value(h) = adjustment - baseline + scale * exp(rate * h)

whose default constants were fit to the carry-adjusted 100-fund dataset;
``adjustment`` slides the whole curve up or down to model better or worse
portfolios (adjustment = baseline reproduces the fitted data, adjustment = 0
is a portfolio that loses half its capital once returns are floored at zero).
A 7th-order polynomial fit of the unadjusted data is provided for reference;
it cannot be inverted algebraically, so the exponential drives everything
downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dataset import ReturnDataset


@dataclass(frozen=True)
class ExpCurveParams:
    """Shifted-exponential return curve parameters."""

    scale: float = 0.2655
    rate: float = 2.88
    baseline: float = 1.55
    adjustment: float = 1.55

    def __post_init__(self) -> None:
        if self.scale <= 0 or self.rate <= 0 or self.baseline <= 0:
            raise ValueError("scale, rate and baseline must all be positive")


#: Curve fitted to the carry-adjusted fund data, at its own portfolio level.
KAUFFMAN_CURVE = ExpCurveParams()


@dataclass(frozen=True)
class PolyCurveParams:
    """Degree-7 polynomial return curve, coefficients in ascending order."""

    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != 8:
            raise ValueError(f"need exactly 8 coefficients, got {len(self.coefficients)}")


#: Reference 7th-order fit of the unadjusted fund data.
KAUFFMAN_POLY7 = PolyCurveParams((
    -0.377,
    25.2906120002135,
    -291.398659319748,
    1671.47290175033,
    -4939.37387988463,
    7727.69689219724,
    -6072.99026870706,
    1886.41489392694,
))


@dataclass(frozen=True)
class InterceptPair:
    """Quantile coordinates where the curve crosses 0 and 1, clamped to [0, 1]."""

    h_zero: float
    h_one: float
    clamped_zero: bool
    clamped_one: bool


def _at(shape: ExpCurveParams, adjustment: float) -> ExpCurveParams:
    return replace(shape, adjustment=adjustment)


def eval_curve(params: ExpCurveParams, h: float, floored: bool = False) -> float:
    """Curve value at quantile h; with ``floored`` the value is clipped at 0."""
    if not 0.0 <= h <= 1.0:
        raise ValueError(f"h must be in [0, 1], got {h}")
    raw = params.adjustment - params.baseline + params.scale * math.exp(params.rate * h)
    return max(0.0, raw) if floored else raw


def curve_integral(params: ExpCurveParams, lo: float, hi: float) -> float:
    """Closed-form integral of the raw (unfloored) curve over [lo, hi]."""
    offset = params.adjustment - params.baseline
    ak = params.scale / params.rate
    return offset * (hi - lo) + ak * (math.exp(params.rate * hi) - math.exp(params.rate * lo))


def _solve_crossing(adjustment: float, target: float, shape: ExpCurveParams) -> tuple[float, bool]:
    # Invert target = adjustment - baseline + scale*e^(rate*h). A non-positive
    # log argument means the curve sits above the target for all h: clamp at 0.
    arg = (target - adjustment + shape.baseline) / shape.scale
    if arg <= 0.0:
        return 0.0, True
    h = math.log(arg) / shape.rate
    if h < 0.0:
        return 0.0, True
    if h > 1.0:
        return 1.0, True
    return h, False


def intercept_one(adjustment: float, shape: ExpCurveParams = KAUFFMAN_CURVE) -> float:
    """Quantile where the curve crosses breakeven (value 1), clamped to [0, 1]."""
    return _solve_crossing(adjustment, 1.0, shape)[0]


def intercept_zero(adjustment: float, shape: ExpCurveParams = KAUFFMAN_CURVE) -> float:
    """Quantile where the curve crosses total loss (value 0), clamped to [0, 1]."""
    return _solve_crossing(adjustment, 0.0, shape)[0]


def intercepts(adjustment: float, shape: ExpCurveParams = KAUFFMAN_CURVE) -> InterceptPair:
    h_zero, clamped_zero = _solve_crossing(adjustment, 0.0, shape)
    h_one, clamped_one = _solve_crossing(adjustment, 1.0, shape)
    return InterceptPair(h_zero, h_one, clamped_zero, clamped_one)


def net_portfolio_return(adjustment: float, shape: ExpCurveParams = KAUFFMAN_CURVE) -> float:
    """Actual portfolio return once losses are floored at zero.

    Equals the closed-form integral of max(0, curve) over [0, 1]: the raw
    integral minus the part below the zero intercept.
    """
    params = _at(shape, adjustment)
    return curve_integral(params, intercept_zero(adjustment, shape), 1.0)


def poly_eval(params: PolyCurveParams, h: float) -> float:
    """Horner evaluation of the polynomial at h."""
    acc = 0.0
    for c in reversed(params.coefficients):
        acc = acc * h + c
    return acc


def poly_integral(params: PolyCurveParams, lo: float, hi: float) -> float:
    """Definite integral via the degree-8 antiderivative."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")

    def anti(h: float) -> float:
        # Horner on the antiderivative sum_i c_i/(i+1) * h^(i+1)
        acc = 0.0
        for i, c in reversed(list(enumerate(params.coefficients))):
            acc = acc * h + c / (i + 1)
        return acc * h

    return anti(hi) - anti(lo)


def quantile_positions(n: int) -> np.ndarray:
    """Midpoint quantiles h_i = (i - 0.5)/n for the sorted returns.

    The midpoint rule makes the empirical integral of the fitted curve agree
    with the dataset mean.
    """
    return (np.arange(n) + 0.5) / n


def fit_exponential(ds: ReturnDataset) -> tuple[float, float]:
    """Least-squares fit of scale * exp(rate * h) to the sorted returns.

    The regression runs on log returns (exponential regression), which is
    what reproduces the canonical curve constants from the carry-adjusted
    data; zero returns cannot be log-fit and are rejected.
    """
    n = len(ds.returns)
    if n < 3:
        raise ValueError(f"need at least 3 points to fit, got {n}")
    y = np.asarray(ds.returns)
    if np.any(y <= 0):
        raise ValueError("exponential fit requires strictly positive returns")
    h = quantile_positions(n)
    rate, log_scale = np.polyfit(h, np.log(y), 1)
    if not (math.isfinite(rate) and math.isfinite(log_scale)):
        raise ValueError("exponential fit did not converge")
    return math.exp(log_scale), float(rate)


def fit_poly7(ds: ReturnDataset) -> PolyCurveParams:
    """Ordinary least-squares degree-7 polynomial over the quantile mapping."""
    n = len(ds.returns)
    if n < 8:
        raise ValueError(f"need at least 8 points for a degree-7 fit, got {n}")
    h = quantile_positions(n)
    coeffs, info = np.polynomial.polynomial.polyfit(h, np.asarray(ds.returns), 7, full=True)
    rank = int(info[1])
    if rank < 8:
        raise ValueError(f"rank-deficient polynomial fit (rank {rank} < 8)")
    return PolyCurveParams(tuple(float(c) for c in coeffs))


def fit_residual_rms(ds: ReturnDataset, predict) -> float:
    """Root-mean-square residual of ``predict(h)`` against the sorted returns."""
    h = quantile_positions(len(ds.returns))
    resid = np.asarray([predict(x) for x in h]) - np.asarray(ds.returns)
    return float(np.sqrt(np.mean(resid**2)))
