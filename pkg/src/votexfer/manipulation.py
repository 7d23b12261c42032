"""Counterfactual analysis of strategic manipulation.

Two strategies are evaluated against a baseline election:

* stronghold splitting - in a safe district the winning party fields a
  second candidate on an allied clone list; the main candidate keeps just
  enough votes to stay ahead of the runner-up while the clone soaks up the
  excess, turning surplus votes into transferable losing votes;
* deliberate loss - the party concedes a district it would have won by
  shedding votes (the shed voters abstain), banking on the compensation
  tier paying more than the lost district mandate.

A third textbook strategy, splitting the party into several national lists,
cannot arise here: voters hold a single vote, so list support follows the
candidate vote and splitting moves nothing between tiers.

Reports compare the party's combined continuous seat share before and after
the manipulation. Pools are exact integers end to end, so invariant cases
(DVT under either strategy) come out at a delta of exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DistrictResult,
    ElectionInput,
    PartyId,
    TransferFormula,
    check_alpha,
    constituency_wins,
    correction_pools,
    district_winner,
)
from .errors import DeltaTooLarge, NotAWinner, ValidationError

CLONE_SUFFIX = "+clone"


@dataclass(frozen=True)
class SplitPlan:
    """A stronghold split: who splits, where, and how safely.

    ``kept_margin`` is the number of votes the main candidate keeps above
    the district's runner-up; the clone receives every remaining vote of the
    original candidate. It must stay within the winner's original margin.
    """

    district_id: str
    party: PartyId
    kept_margin: int

    def __post_init__(self):
        if self.kept_margin < 1:
            raise ValidationError("kept_margin must be a positive vote count")


@dataclass(frozen=True)
class CounterfactualReport:
    """Outcome of one manipulation scenario."""

    strategy: str
    formula: TransferFormula
    baseline_share: float
    manipulated_share: float
    delta: float
    profitable: bool


def _combined_share(
    election: ElectionInput,
    members: tuple[PartyId, ...],
    formula: TransferFormula,
    alpha,
) -> float:
    """Continuous seat share of an alliance, from summed integer pools.

    Pools are combined before the division so that an unchanged total pool
    yields a bit-identical share (no float re-association).
    """
    wins = constituency_wins(election)
    pools = correction_pools(election, formula)
    total_pool = pools.grand_total()
    constituency = sum(wins[p] for p in members) / len(election.districts)
    list_share = sum(pools.total[p] for p in members) / total_pool
    return alpha * constituency + (1 - alpha) * list_share


def evaluate_stronghold_split(
    election: ElectionInput,
    plan: SplitPlan,
    formula: TransferFormula,
    alpha,
) -> CounterfactualReport:
    """Score a stronghold split: party plus clone versus the party alone.

    The counterfactual rewrites the target district: the main candidate
    keeps runner-up votes plus ``plan.kept_margin`` and the clone, allied
    with the party for list purposes, receives the remainder. District
    totals are preserved; only the split between the two allied candidates
    changes.
    """
    check_alpha(alpha)
    district = election.district(plan.district_id)
    outcome = district_winner(district, election.parties)
    if outcome.winner != plan.party:
        raise NotAWinner(
            f"{plan.party!r} did not win district {plan.district_id!r} "
            f"(winner: {outcome.winner!r})"
        )
    margin = outcome.winner_votes - outcome.runner_up_votes
    if plan.kept_margin > margin:
        raise DeltaTooLarge(
            f"kept_margin {plan.kept_margin} exceeds the winning margin {margin}"
        )
    clone = plan.party + CLONE_SUFFIX
    if clone in election.parties:
        raise ValidationError(f"party id {clone!r} already exists")

    main_votes = outcome.runner_up_votes + plan.kept_margin
    clone_votes = outcome.winner_votes - main_votes
    new_districts = []
    for d in election.districts:
        if d.district_id != plan.district_id:
            new_districts.append(d)
            continue
        votes = dict(d.votes)
        votes[plan.party] = main_votes
        votes[clone] = clone_votes
        new_districts.append(DistrictResult(d.district_id, votes))
    party_index = election.parties.index(plan.party)
    new_parties = (
        election.parties[: party_index + 1]
        + (clone,)
        + election.parties[party_index + 1 :]
    )
    list_votes = None
    if election.list_votes is not None:
        list_votes = dict(election.list_votes)
        list_votes[clone] = 0
    manipulated = ElectionInput(
        new_parties, tuple(new_districts), list_votes, election.equal_size
    )

    baseline = _combined_share(election, (plan.party,), formula, alpha)
    combined = _combined_share(manipulated, (plan.party, clone), formula, alpha)
    delta = combined - baseline
    return CounterfactualReport(
        "stronghold_split", formula, baseline, combined, delta, delta > 0
    )


def evaluate_deliberate_loss(
    election: ElectionInput,
    district_id: str,
    party: PartyId,
    formula: TransferFormula,
    alpha,
) -> CounterfactualReport:
    """Score conceding a district the party currently wins.

    The counterfactual gives the party's candidate one vote fewer than the
    district's runner-up; the removed voters abstain, so the district
    shrinks. Abstention (rather than switching to the opponent) isolates
    the monotonicity question: can a party gain from receiving fewer votes?
    """
    check_alpha(alpha)
    district = election.district(district_id)
    outcome = district_winner(district, election.parties)
    if outcome.winner != party:
        raise NotAWinner(
            f"{party!r} did not win district {district_id!r} "
            f"(winner: {outcome.winner!r})"
        )
    if outcome.runner_up_votes < 1:
        raise ValidationError(
            f"district {district_id!r} has no runner-up votes; "
            "the district cannot be conceded by shedding votes"
        )

    new_districts = []
    for d in election.districts:
        if d.district_id != district_id:
            new_districts.append(d)
            continue
        votes = dict(d.votes)
        votes[party] = outcome.runner_up_votes - 1
        new_districts.append(DistrictResult(d.district_id, votes))
    manipulated = ElectionInput(
        election.parties, tuple(new_districts), election.list_votes, equal_size=False
    )

    baseline = _combined_share(election, (party,), formula, alpha)
    counterfactual = _combined_share(manipulated, (party,), formula, alpha)
    delta = counterfactual - baseline
    return CounterfactualReport(
        "deliberate_loss", formula, baseline, counterfactual, delta, delta > 0
    )
