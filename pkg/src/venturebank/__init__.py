"""Venture-banking economics under equity default clawback swap coverage."""

from .dataset import (
    BUILTIN_DATASETS,
    DatasetStats,
    ReturnDataset,
    adjust_for_carry,
    dataset_stats,
    load_dataset,
)
from .edcs_core import (
    DEFAULT_PARAMS,
    DealComponents,
    EdcsParams,
    RoiResult,
    UnderwriterPremiums,
    clawback_lien,
    deal_components,
    edcs_payout,
    equity_split,
    payout_with_carry,
    premiums_underwriter,
    premiums_vb_carried,
    uw_earnings,
    uw_roi_simple,
    vb_earnings,
    vb_roi,
)
from .ledger import (
    Ledger,
    LedgerEntry,
    LedgerError,
    LedgerReport,
    WalkthroughReport,
    castle_vc_counterfactual,
    castle_venture_bank,
    counterfactual_breakeven_multiple,
    ledger_balance_check,
    simplified_walkthrough,
)
from .returns_model import (
    KAUFFMAN_CURVE,
    KAUFFMAN_POLY7,
    ExpCurveParams,
    InterceptPair,
    PolyCurveParams,
    curve_integral,
    eval_curve,
    fit_exponential,
    fit_poly7,
    intercept_one,
    intercept_zero,
    intercepts,
    net_portfolio_return,
    poly_eval,
    poly_integral,
)
from .sweep import (
    AxisSpec,
    SweepGrid,
    SweepSpec,
    dump_config,
    emit_csv,
    emit_svg,
    evaluate_quantity,
    load_config,
    load_sweep_spec,
    parse_csv,
    run_sweep,
    save_config,
)
from .underwriter_scenarios import (
    DEFAULT_SCENARIO,
    BreakevenResult,
    SaleScenario,
    bisect_root,
    breakeven_adjustment,
    discounted_sale,
    scenario_roi,
    uw_roi_clawback_sales,
    uw_roi_combined,
    uw_roi_equity_sales,
)

__version__ = "0.1.0"
