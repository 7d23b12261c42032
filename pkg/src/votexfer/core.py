"""Domain model for vote-transfer mixed-member elections.

An election is a set of single-member districts plus an optional separate
national list vote. Seats split into a constituency tier (first past the
post, weight ``alpha``) and a list tier (weight ``1 - alpha``) fed by one of
three correction formulas:

* DVT (direct vote transfer) - the list pool is the raw aggregated vote.
* PVT (positive vote transfer) - losing candidates' district votes are added
  to their party's pool.
* NVT (negative vote transfer) - PVT plus the winner's surplus (winner votes
  minus runner-up votes) added to the winner's pool.

Votes are non-negative integers and all pools are computed in exact integer
arithmetic; only the normalized shares are real-valued. Every function here
is pure and every value is immutable after construction, so instances are
safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple

from .errors import TiedDistrict, ValidationError

PartyId = str


class TransferFormula(Enum):
    """The three correction-vote formulas for the list tier."""

    DVT = "DVT"
    PVT = "PVT"
    NVT = "NVT"

    @classmethod
    def parse(cls, token: str) -> "TransferFormula":
        try:
            return cls[token.strip().upper()]
        except KeyError:
            raise ValidationError(f"unknown transfer formula: {token!r}") from None


FORMULAS = (TransferFormula.DVT, TransferFormula.PVT, TransferFormula.NVT)


def check_alpha(alpha) -> None:
    """Validate a constituency-seat share; accepts any real type."""
    if not 0 <= alpha <= 1:
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha!r}")


@dataclass(frozen=True)
class DistrictResult:
    """Vote counts of a single-member district.

    At least two parties must have an entry and at least one count must be
    positive; a zero entry is a party that fielded a candidate but received
    no votes.
    """

    district_id: str
    votes: Mapping[PartyId, int]

    def __post_init__(self):
        if not self.district_id:
            raise ValidationError("district_id must be non-empty")
        if len(self.votes) < 2:
            raise ValidationError(
                f"district {self.district_id!r}: needs at least 2 parties with entries"
            )
        for party, count in self.votes.items():
            if not party:
                raise ValidationError(f"district {self.district_id!r}: empty party id")
            if not isinstance(count, int) or isinstance(count, bool):
                raise ValidationError(
                    f"district {self.district_id!r}: vote count for {party!r} must be an integer"
                )
            if count < 0:
                raise ValidationError(
                    f"district {self.district_id!r}: negative vote count for {party!r}"
                )
        if all(count == 0 for count in self.votes.values()):
            raise ValidationError(
                f"district {self.district_id!r}: at least one count must be positive"
            )
        object.__setattr__(self, "votes", dict(self.votes))

    def total(self) -> int:
        return sum(self.votes.values())


@dataclass(frozen=True)
class ElectionInput:
    """A full election: ordered parties, districts, optional list votes.

    ``parties`` fixes the tie-breaking order everywhere in the package.
    ``list_votes`` models the two-vote variant where electors cast a separate
    national list ballot; when absent, list pools start from the aggregated
    candidate votes. ``equal_size`` asserts that every district cast the same
    number of votes (validated when district data is present).
    """

    parties: tuple[PartyId, ...]
    districts: tuple[DistrictResult, ...]
    list_votes: Mapping[PartyId, int] | None = None
    equal_size: bool = True

    def __post_init__(self):
        object.__setattr__(self, "parties", tuple(self.parties))
        object.__setattr__(self, "districts", tuple(self.districts))
        if not self.parties:
            raise ValidationError("an election needs at least one party")
        if len(set(self.parties)) != len(self.parties):
            raise ValidationError("party ids must be unique")
        if any(not p for p in self.parties):
            raise ValidationError("party ids must be non-empty")
        if not self.districts:
            raise ValidationError("an election needs at least one district")
        known = set(self.parties)
        seen_ids = set()
        for district in self.districts:
            if district.district_id in seen_ids:
                raise ValidationError(f"duplicate district id {district.district_id!r}")
            seen_ids.add(district.district_id)
            unknown = set(district.votes) - known
            if unknown:
                raise ValidationError(
                    f"district {district.district_id!r}: parties {sorted(unknown)} "
                    "do not appear in the election's party list"
                )
        if self.equal_size:
            totals = {d.total() for d in self.districts}
            if len(totals) > 1:
                raise ValidationError(
                    "equal_size is set but district vote totals differ: "
                    f"{sorted(totals)}"
                )
        if self.list_votes is not None:
            unknown = set(self.list_votes) - known
            if unknown:
                raise ValidationError(
                    f"list_votes names unknown parties {sorted(unknown)}"
                )
            for party, count in self.list_votes.items():
                if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                    raise ValidationError(
                        f"list_votes for {party!r} must be a non-negative integer"
                    )
            if sum(self.list_votes.values()) == 0:
                raise ValidationError("list_votes must contain at least one vote")
            object.__setattr__(self, "list_votes", dict(self.list_votes))

    def district(self, district_id: str) -> DistrictResult:
        for d in self.districts:
            if d.district_id == district_id:
                return d
        raise ValidationError(f"no district named {district_id!r}")


class DistrictOutcome(NamedTuple):
    """Winner of a district plus the data the correction formulas need."""

    winner: PartyId
    winner_votes: int
    runner_up_votes: int
    tied: bool


def district_winner(
    district: DistrictResult, parties: tuple[PartyId, ...]
) -> DistrictOutcome:
    """First-past-the-post outcome of one district.

    Ties on the maximal count are resolved in favour of the party appearing
    earliest in ``parties`` and flagged via ``tied``. The runner-up count is
    the largest count among the other parties (0 when only the winner polled
    any votes).
    """
    order = {p: i for i, p in enumerate(parties)}
    best = max(district.votes.values())
    leaders = [p for p, v in district.votes.items() if v == best]
    winner = min(leaders, key=order.__getitem__)
    runner_up = max(
        (v for p, v in district.votes.items() if p != winner), default=0
    )
    return DistrictOutcome(winner, best, runner_up, len(leaders) > 1)


def district_outcomes(
    election: ElectionInput, *, strict_ties: bool = False
) -> list[DistrictOutcome]:
    """Outcomes for every district, in input order."""
    outcomes = []
    for district in election.districts:
        outcome = district_winner(district, election.parties)
        if outcome.tied and strict_ties:
            raise TiedDistrict(
                f"district {district.district_id!r} is tied on {outcome.winner_votes} votes"
            )
        outcomes.append(outcome)
    return outcomes


def constituency_wins(
    election: ElectionInput, *, strict_ties: bool = False
) -> dict[PartyId, int]:
    """Districts won per party (every party present, zeros included)."""
    wins = {p: 0 for p in election.parties}
    for outcome in district_outcomes(election, strict_ties=strict_ties):
        wins[outcome.winner] += 1
    return wins


@dataclass(frozen=True)
class CorrectionPools:
    """Per-party list-tier vote pools under one formula.

    ``direct`` is the base pool (candidate votes aggregated, or the separate
    list votes when the election has them). ``losing`` collects the votes of
    losing candidates, ``winning_surplus`` the winners' margins over the
    runner-up. ``total`` already applies the formula:
    DVT = direct, PVT = direct + losing, NVT = direct + losing + surplus.
    """

    formula: TransferFormula
    direct: dict[PartyId, int] = field(repr=False)
    losing: dict[PartyId, int] = field(repr=False)
    winning_surplus: dict[PartyId, int] = field(repr=False)
    total: dict[PartyId, int]

    def grand_total(self) -> int:
        return sum(self.total.values())


def correction_pools(
    election: ElectionInput,
    formula: TransferFormula,
    *,
    strict_ties: bool = False,
) -> CorrectionPools:
    """Compute the list-tier pools of every party under ``formula``."""
    if election.list_votes is not None:
        direct = {p: election.list_votes.get(p, 0) for p in election.parties}
    else:
        direct = {p: 0 for p in election.parties}
        for district in election.districts:
            for party, count in district.votes.items():
                direct[party] += count

    losing = {p: 0 for p in election.parties}
    surplus = {p: 0 for p in election.parties}
    for district, outcome in zip(
        election.districts, district_outcomes(election, strict_ties=strict_ties)
    ):
        surplus[outcome.winner] += outcome.winner_votes - outcome.runner_up_votes
        for party, count in district.votes.items():
            if party != outcome.winner:
                losing[party] += count

    total = dict(direct)
    if formula is not TransferFormula.DVT:
        for p in total:
            total[p] += losing[p]
    if formula is TransferFormula.NVT:
        for p in total:
            total[p] += surplus[p]
    return CorrectionPools(formula, direct, losing, surplus, total)


@dataclass(frozen=True)
class ContinuousAllocation:
    """Real-valued seat shares (no apportionment rounding).

    ``seat_share`` is the alpha-weighted sum of the constituency and list
    shares; each of the three maps sums to 1.
    """

    constituency_share: dict[PartyId, float]
    list_share: dict[PartyId, float]
    seat_share: dict[PartyId, float]


def continuous_allocation(
    election: ElectionInput,
    formula: TransferFormula,
    alpha,
    *,
    strict_ties: bool = False,
) -> ContinuousAllocation:
    """Continuous two-tier allocation.

    Constituency share is districts won over total districts; list share is
    the normalized correction pool; the seat share mixes them with weight
    ``alpha`` on the constituency tier. ``alpha`` may be any real type
    (float or Fraction); arithmetic is carried out in that type.
    """
    check_alpha(alpha)
    wins = constituency_wins(election, strict_ties=strict_ties)
    pools = correction_pools(election, formula, strict_ties=strict_ties)
    n_districts = len(election.districts)
    pool_sum = pools.grand_total()
    if pool_sum == 0:
        raise ValidationError("list pools are all zero; shares undefined")

    constituency = {p: wins[p] / n_districts for p in election.parties}
    list_share = {p: pools.total[p] / pool_sum for p in election.parties}
    seat = {
        p: alpha * constituency[p] + (1 - alpha) * list_share[p]
        for p in election.parties
    }
    return ContinuousAllocation(constituency, list_share, seat)
