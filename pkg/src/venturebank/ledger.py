"""Double-entry ledgers for the toy castle deal and the simplified walkthrough.

Amounts are signed integer cents: positive means value flowing to the party,
negative means value flowing out. Every transaction must conserve value (sum
to zero across its entries), with suspense entries (principal mechanics,
pending liens) additionally summing to zero among themselves. Value creation
is booked as an expense of the ``external`` party - the economy "pays in" the
assessed worth of what was built - which makes the balancing identity

    vb_net + uw_net + external_interest = value_created

an arithmetic consequence of balanced construction for the venture-bank
ledgers, exact in cents.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import IO, Iterator

from .edcs_core import DEFAULT_PARAMS, EdcsParams

PARTIES = ("venture_bank", "underwriter", "external")
KINDS = ("asset", "liability", "income", "expense", "suspense")

_INT64_MAX = 2**63 - 1


class LedgerError(ValueError):
    """Unbalanced transaction, unmatched suspense, or broken report identity."""


@dataclass(frozen=True)
class LedgerEntry:
    party: str
    year: int
    description: str
    amount: int
    kind: str

    def __post_init__(self) -> None:
        if self.party not in PARTIES:
            raise LedgerError(f"unknown party {self.party!r}")
        if self.kind not in KINDS:
            raise LedgerError(f"unknown entry kind {self.kind!r}")
        if not isinstance(self.amount, int) or abs(self.amount) > _INT64_MAX:
            raise LedgerError(f"amount must be a 64-bit integer cent count, got {self.amount!r}")


@dataclass
class Ledger:
    """Append-only list of balanced transactions."""

    transactions: list[tuple[LedgerEntry, ...]] = field(default_factory=list)

    def record(self, *entries: LedgerEntry) -> None:
        """Append one transaction; debits must equal credits exactly."""
        if not entries:
            raise LedgerError("empty transaction")
        total = sum(e.amount for e in entries)
        if total != 0:
            raise LedgerError(f"unbalanced transaction (sum {total} cents): {entries}")
        suspense = sum(e.amount for e in entries if e.kind == "suspense")
        if suspense != 0:
            raise LedgerError(f"suspense legs do not balance (sum {suspense} cents)")
        self.transactions.append(tuple(entries))

    def entries(self) -> Iterator[LedgerEntry]:
        for tx in self.transactions:
            yield from tx

    def unmatched_suspense(self) -> list[LedgerEntry]:
        """Suspense positions not retired by an equal-and-opposite entry in a
        later transaction (a transaction cannot retire its own openings)."""
        open_positions: list[tuple[int, LedgerEntry]] = []
        for index, tx in enumerate(self.transactions):
            for entry in tx:
                if entry.kind != "suspense":
                    continue
                for item in open_positions:
                    opened_at, pos = item
                    if (
                        opened_at < index
                        and pos.party == entry.party
                        and pos.amount == -entry.amount
                    ):
                        open_positions.remove(item)
                        break
                else:
                    open_positions.append((index, entry))
        return [entry for _, entry in open_positions]

    def to_csv(self, out: IO[str]) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["party", "year", "description", "amount_cents", "kind"])
        for entry in self.entries():
            writer.writerow([entry.party, entry.year, entry.description, entry.amount, entry.kind])


@dataclass(frozen=True)
class LedgerReport:
    """Per-party nets in exact cents, Table-style."""

    vb_net: int
    uw_net: int
    external_interest: int
    value_created: int

    @property
    def identity_holds(self) -> bool:
        return self.vb_net + self.uw_net + self.external_interest == self.value_created

    def display_dollars(self) -> tuple[int, int, int, int]:
        """Nets rounded to the nearest thousand dollars for presentation."""
        return (
            _to_thousand_dollars(self.vb_net),
            _to_thousand_dollars(self.uw_net),
            _to_thousand_dollars(self.external_interest),
            _to_thousand_dollars(self.value_created),
        )


def _to_thousand_dollars(cents: int) -> int:
    return round(cents / 100_000) * 1000


def _cents(value: float) -> int:
    return round(value)


def _party_sums(ledger: Ledger) -> LedgerReport:
    vb = uw = interest = created = 0
    for entry in ledger.entries():
        if entry.kind == "suspense":
            continue
        if entry.party == "venture_bank":
            vb += entry.amount
        elif entry.party == "underwriter":
            uw += entry.amount
        elif entry.kind == "income":
            interest += entry.amount
        elif entry.kind == "expense":
            created -= entry.amount
    return LedgerReport(vb, uw, interest, created)


def ledger_balance_check(ledger: Ledger) -> LedgerReport:
    """Verify closure and the balancing identity; return the per-party report."""
    unmatched = ledger.unmatched_suspense()
    if unmatched:
        raise LedgerError(f"{len(unmatched)} unmatched suspense entries: {unmatched}")
    report = _party_sums(ledger)
    if not report.identity_holds:
        raise LedgerError(
            "balancing identity violated: "
            f"{report.vb_net} + {report.uw_net} + {report.external_interest}"
            f" != {report.value_created}"
        )
    return report


def castle_venture_bank(
    loan_cents: int = 100_000_000,
    valuation_fraction: float = 0.5,
    params: EdcsParams = DEFAULT_PARAMS,
) -> tuple[Ledger, LedgerReport]:
    """A venture-bank builds a castle worth a fraction of the loan it wrote.

    The bank creates the loan money itself, buys EDCS coverage (premiums
    financed on a line of credit), and on completion the underwriter pays out
    the policy, takes the castle, and collects a clawback on the accepted
    shortfall. Internal books stay in exact cents; the published figures
    round to the nearest thousand dollars.
    """
    if loan_cents <= 0:
        raise ValueError(f"loan must be positive, got {loan_cents}")
    if not 0.0 <= valuation_fraction <= 1.0:
        raise ValueError(f"valuation_fraction must be in [0, 1], got {valuation_fraction}")

    year = int(params.payout_year)
    premiums = _cents(loan_cents * params.edcs_rate * params.payout_year)
    premium_cost = _cents(premiums * (1.0 + params.vb_carry_rate) ** params.payout_year)
    valuation = _cents(loan_cents * valuation_fraction)
    lien_pending = _cents(loan_cents * params.clawback_fraction)
    clawback = _cents((loan_cents - valuation) * params.clawback_fraction)

    ledger = Ledger()
    ledger.record(
        LedgerEntry("venture_bank", 0, "investment loan written", loan_cents, "suspense"),
        LedgerEntry("venture_bank", 0, "deposit created to fund construction", -loan_cents, "suspense"),
    )
    ledger.record(
        LedgerEntry("external", year, "premium line of credit advanced", -premiums, "asset"),
        LedgerEntry("underwriter", year, "EDCS premiums received over coverage term", premiums, "income"),
    )
    ledger.record(
        LedgerEntry("venture_bank", year, "castle recognized at assessed valuation", valuation, "asset"),
        LedgerEntry("external", year, "utility value created by construction", -valuation, "expense"),
    )
    if valuation < loan_cents:
        ledger.record(
            LedgerEntry("underwriter", year, "EDCS payout on shortfall", -loan_cents, "expense"),
            LedgerEntry("venture_bank", year, "EDCS payout received", loan_cents, "income"),
            LedgerEntry("venture_bank", year, "castle transferred, assessment pending", -valuation, "asset"),
            LedgerEntry("underwriter", year, "castle received, assessment pending", valuation, "asset"),
        )
        ledger.record(
            LedgerEntry("venture_bank", year, "clawback lien pending (fraction of payout)", -lien_pending, "suspense"),
            LedgerEntry("underwriter", year, "clawback lien receivable pending", lien_pending, "suspense"),
        )
        ledger.record(
            LedgerEntry("venture_bank", year, "valuation accepted; pending lien released", lien_pending, "suspense"),
            LedgerEntry("underwriter", year, "pending lien receivable released", -lien_pending, "suspense"),
        )
    ledger.record(
        LedgerEntry("venture_bank", year, "investment loan retired", -loan_cents, "suspense"),
        LedgerEntry("venture_bank", year, "construction deposit extinguished", loan_cents, "suspense"),
    )
    ledger.record(
        LedgerEntry("venture_bank", year, "premium line of credit repaid with interest", -premium_cost, "expense"),
        LedgerEntry("external", year, "premium line of credit principal returned", premiums, "asset"),
        LedgerEntry("external", year, "interest on premium line of credit", premium_cost - premiums, "income"),
    )
    if valuation < loan_cents:
        ledger.record(
            LedgerEntry("venture_bank", year, "clawback paid on accepted shortfall", -clawback, "expense"),
            LedgerEntry("underwriter", year, "clawback received", clawback, "income"),
        )
    return ledger, ledger_balance_check(ledger)


def castle_vc_counterfactual(
    params: EdcsParams = DEFAULT_PARAMS,
    loan_cents: int = 100_000_000,
    valuation_fraction: float = 0.5,
    bank_loan_rate: float = 0.025,
) -> tuple[Ledger, LedgerReport]:
    """The same castle built by a VC on a conventional bank loan.

    The construction money is real and must be repaid with interest, so the
    castle's shortfall lands on the VC instead of vanishing as a loan
    write-down. Interest books at the dollar precision of the published
    account; the premium line of credit books at its rounded thousand. The
    balancing identity intentionally does not hold here: the construction
    spending leaves the system as builders' receipts.
    """
    if loan_cents <= 0:
        raise ValueError(f"loan must be positive, got {loan_cents}")
    if not 0.0 <= valuation_fraction <= 1.0:
        raise ValueError(f"valuation_fraction must be in [0, 1], got {valuation_fraction}")

    year = int(params.payout_year)
    premiums = _cents(loan_cents * params.edcs_rate * params.payout_year)
    premium_cost = _round_to_thousand_cents(
        premiums * (1.0 + params.vb_carry_rate) ** params.payout_year
    )
    interest = _round_to_dollar_cents(
        loan_cents * ((1.0 + bank_loan_rate) ** params.payout_year - 1.0)
    )
    valuation = _cents(loan_cents * valuation_fraction)
    lien_pending = _cents(loan_cents * params.clawback_fraction)
    clawback = _cents((loan_cents - valuation) * params.clawback_fraction)

    ledger = Ledger()
    ledger.record(
        LedgerEntry("venture_bank", 0, "bank loan drawn", loan_cents, "suspense"),
        LedgerEntry("external", 0, "bank loan advanced", -loan_cents, "suspense"),
    )
    ledger.record(
        LedgerEntry("venture_bank", 0, "construction paid with borrowed money", -loan_cents, "expense"),
        LedgerEntry("external", 0, "construction payments received", loan_cents, "asset"),
    )
    ledger.record(
        LedgerEntry("external", year, "premium line of credit advanced", -premiums, "asset"),
        LedgerEntry("underwriter", year, "EDCS premiums received over coverage term", premiums, "income"),
    )
    ledger.record(
        LedgerEntry("venture_bank", year, "castle recognized at assessed valuation", valuation, "asset"),
        LedgerEntry("external", year, "utility value created by construction", -valuation, "expense"),
    )
    if valuation < loan_cents:
        ledger.record(
            LedgerEntry("underwriter", year, "EDCS payout on shortfall", -loan_cents, "expense"),
            LedgerEntry("venture_bank", year, "EDCS payout received", loan_cents, "income"),
            LedgerEntry("venture_bank", year, "castle transferred, assessment pending", -valuation, "asset"),
            LedgerEntry("underwriter", year, "castle received, assessment pending", valuation, "asset"),
        )
        ledger.record(
            LedgerEntry("venture_bank", year, "clawback lien pending (fraction of payout)", -lien_pending, "suspense"),
            LedgerEntry("underwriter", year, "clawback lien receivable pending", lien_pending, "suspense"),
        )
        ledger.record(
            LedgerEntry("venture_bank", year, "valuation accepted; pending lien released", lien_pending, "suspense"),
            LedgerEntry("underwriter", year, "pending lien receivable released", -lien_pending, "suspense"),
        )
    ledger.record(
        LedgerEntry("venture_bank", year, "bank loan repaid", -loan_cents, "suspense"),
        LedgerEntry("external", year, "bank loan principal returned", loan_cents, "suspense"),
    )
    ledger.record(
        LedgerEntry("venture_bank", year, "accrued loan interest paid", -interest, "expense"),
        LedgerEntry("external", year, "bank loan interest", interest, "income"),
    )
    ledger.record(
        LedgerEntry("venture_bank", year, "premium line of credit repaid with interest", -premium_cost, "expense"),
        LedgerEntry("external", year, "premium line of credit principal returned", premiums, "asset"),
        LedgerEntry("external", year, "interest on premium line of credit", premium_cost - premiums, "income"),
    )
    if valuation < loan_cents:
        ledger.record(
            LedgerEntry("venture_bank", year, "clawback paid on accepted shortfall", -clawback, "expense"),
            LedgerEntry("underwriter", year, "clawback received", clawback, "income"),
        )
    unmatched = ledger.unmatched_suspense()
    if unmatched:
        raise LedgerError(f"{len(unmatched)} unmatched suspense entries: {unmatched}")
    return ledger, _party_sums(ledger)


def counterfactual_breakeven_multiple(
    params: EdcsParams = DEFAULT_PARAMS,
    loan_cents: int = 100_000_000,
    bank_loan_rate: float = 0.025,
) -> float:
    """Return multiple a conventionally financed VC needs just to cover debts."""
    premiums = _cents(loan_cents * params.edcs_rate * params.payout_year)
    premium_cost = _round_to_thousand_cents(
        premiums * (1.0 + params.vb_carry_rate) ** params.payout_year
    )
    interest = _round_to_dollar_cents(
        loan_cents * ((1.0 + bank_loan_rate) ** params.payout_year - 1.0)
    )
    return (loan_cents + interest + premium_cost) / loan_cents


def _round_to_dollar_cents(cents: float) -> int:
    return round(cents / 100) * 100


def _round_to_thousand_cents(cents: float) -> int:
    return round(cents / 100_000) * 100_000


@dataclass(frozen=True)
class WalkthroughReport:
    """The simplified even-split deal arithmetic, one turn of capital.

    Rates carry the four-decimal precision of the published account, so each
    chained figure reproduces it exactly. Half the contracts pay premiums to
    the payout year, half to the exit year.
    """

    premium_rate_winners: float
    premium_rate_losers: float
    premium_cost: float
    payout_fraction: float
    uw_equity: float
    vb_equity_remainder: float
    after_premiums: float
    clawback_payback: float
    net_per_turn: float
    moc_table: tuple[tuple[float, float], ...]
    uw_premium_income: float
    uw_carry_cost: float
    uw_earnings_pct: float
    uw_roi_multiplier: float

    def components(self) -> tuple[tuple[str, float], ...]:
        return (
            ("premium cost with carry", -self.premium_cost),
            ("EDCS payouts received", self.payout_fraction),
            ("underwriter equity share", -self.uw_equity),
            ("equity remainder", self.vb_equity_remainder),
            ("clawback payback", -self.clawback_payback),
            ("net per turn", self.net_per_turn),
        )


_WALKTHROUGH_MOCS = (3.0, 4.0, 5.0, 30.0, 43.0, 47.0)


def annuity_factor(rate: float, years: int) -> float:
    """End-of-year payments carried to the term: sum of (1+r)^k, k < years."""
    if rate == 0.0:
        return float(years)
    return ((1.0 + rate) ** years - 1.0) / rate


def simplified_walkthrough(
    params: EdcsParams = DEFAULT_PARAMS,
    payout_fraction: float = 0.1361,
    positive_exit_equity: float = 1.028089,
    portfolio_multiple: float = 1.3875,
) -> WalkthroughReport:
    """One turn of capital with half losers and half winners.

    Premium costs compound annually at the bank's carry rate; winners' share
    of exit equity goes half to the underwriter; the clawback takes its
    fraction of the payouts back.
    """
    if min(payout_fraction, positive_exit_equity, portfolio_multiple) < 0:
        raise ValueError("walkthrough inputs must be >= 0")

    exit_years = int(params.exit_year)
    payout_years = int(params.payout_year)
    rate_winners = round(params.edcs_rate * annuity_factor(params.vb_carry_rate, exit_years), 4)
    rate_losers = round(params.edcs_rate * annuity_factor(params.vb_carry_rate, payout_years), 4)
    premium_cost = rate_winners * 0.5 + rate_losers * 0.5

    uw_equity = positive_exit_equity * params.equity_fraction
    vb_remainder = portfolio_multiple - uw_equity
    after_premiums = vb_remainder - premium_cost
    clawback_payback = payout_fraction * params.clawback_fraction
    net_per_turn = after_premiums - clawback_payback

    uw_premium_income = params.edcs_rate * (params.exit_year * 0.5 + params.payout_year * 0.5)
    uw_carry_cost = payout_fraction * ((1.0 + params.vb_carry_rate) ** params.payout_year - 1.0)
    uw_earnings = (
        uw_premium_income - payout_fraction - uw_carry_cost + clawback_payback + uw_equity
    )
    uw_cost_basis = payout_fraction + uw_carry_cost
    uw_roi_multiplier = uw_earnings / uw_cost_basis if uw_cost_basis > 0 else math.inf

    return WalkthroughReport(
        premium_rate_winners=rate_winners,
        premium_rate_losers=rate_losers,
        premium_cost=premium_cost,
        payout_fraction=payout_fraction,
        uw_equity=uw_equity,
        vb_equity_remainder=vb_remainder,
        after_premiums=after_premiums,
        clawback_payback=clawback_payback,
        net_per_turn=net_per_turn,
        moc_table=tuple((m, m * net_per_turn) for m in _WALKTHROUGH_MOCS),
        uw_premium_income=uw_premium_income,
        uw_carry_cost=uw_carry_cost,
        uw_earnings_pct=uw_earnings,
        uw_roi_multiplier=uw_roi_multiplier,
    )
