"""Discrete seat allocation: d'Hondt over the correction pools.

Constituency seats go to the district winners; a further ``L`` list seats
are assigned by the d'Hondt highest-averages rule over the formula-specific
pools, with an entry threshold. The scenario machinery sweeps ``L`` over a
range, scores each outcome against a reference allocation with the squared
seat-share difference, and locates supermajority boundaries.

All quotient comparisons are exact (integer cross-multiplication); ties are
broken by the larger raw pool, then by party order, which matches common
statutory practice and keeps the allocation deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .core import (
    ElectionInput,
    PartyId,
    TransferFormula,
    constituency_wins,
    correction_pools,
)
from .errors import AllPartiesExcluded, PartyMismatch, ValidationError, WinnerMismatch


def exact_fraction(value) -> Fraction:
    """Exact rational for thresholds and supermajority fractions.

    Floats are interpreted through their shortest decimal representation
    (0.05 -> 1/20), so decimal-looking thresholds behave as written; pass a
    Fraction or a string like "2/3" where exactness at a boundary matters.
    """
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def dhondt(
    pools: Mapping[PartyId, int],
    seats: int,
    *,
    threshold=0,
    basis: int | None = None,
    party_order: Sequence[PartyId] | None = None,
) -> dict[PartyId, int]:
    """Assign ``seats`` list seats by the d'Hondt highest-averages rule.

    Parties whose pool is strictly below ``threshold * basis`` are excluded
    (``basis`` defaults to the sum of all pools). Each seat goes to the
    party maximizing pool/(seats_won + 1); comparisons are exact integer
    cross-multiplications, ties prefer the larger raw pool and then the
    earlier party in ``party_order`` (input order by default).

    Raises AllPartiesExcluded when seats remain but nobody passes.
    """
    if seats < 0:
        raise ValidationError("seat count must be non-negative")
    order = list(party_order) if party_order is not None else list(pools)
    if set(order) != set(pools):
        raise ValidationError("party_order must cover exactly the pooled parties")
    for p in order:
        if pools[p] < 0:
            raise ValidationError(f"negative pool for {p!r}")

    cut = exact_fraction(threshold)
    if not 0 <= cut < 1:
        raise ValidationError(f"threshold must lie in [0, 1), got {threshold!r}")
    if basis is None:
        basis = sum(pools.values())
    passing = [p for p in order if pools[p] * cut.denominator >= cut.numerator * basis]

    allocated = {p: 0 for p in order}
    if seats == 0:
        return allocated
    if not passing:
        raise AllPartiesExcluded(
            f"no party reaches {threshold!r} of the vote basis {basis}"
        )
    for _ in range(seats):
        best = None
        for p in passing:
            if best is None:
                best = p
                continue
            # pools[p]/(allocated[p]+1) vs pools[best]/(allocated[best]+1)
            lhs = pools[p] * (allocated[best] + 1)
            rhs = pools[best] * (allocated[p] + 1)
            if lhs > rhs or (lhs == rhs and pools[p] > pools[best]):
                best = p
        allocated[best] += 1
    return allocated


@dataclass(frozen=True)
class PoolFixture:
    """Aggregate pools per formula plus fixed constituency winners.

    The shape of the shipped national fixtures: no district-level data, just
    the per-party list pools under each formula and the districts won.
    """

    parties: tuple[PartyId, ...]
    constituency_seats: dict[PartyId, int]
    pools: dict[TransferFormula, dict[PartyId, int]]

    def __post_init__(self):
        object.__setattr__(self, "parties", tuple(self.parties))
        for p in self.parties:
            if self.constituency_seats.get(p, 0) < 0:
                raise ValidationError(f"negative constituency seats for {p!r}")


ElectionOrPools = Union[ElectionInput, PoolFixture]


@dataclass(frozen=True)
class ApportionmentConfig:
    """Parameters of a discrete allocation.

    ``threshold`` applies to the list-pool totals (the basis is the pool sum
    of the parties present). ``constituency_winners``, when given alongside
    district-level data, is cross-checked against the recomputed winners.
    """

    list_seats: int
    threshold: object = 0
    constituency_winners: Mapping[PartyId, int] | None = None

    def __post_init__(self):
        if self.list_seats < 0:
            raise ValidationError("list_seats must be non-negative")


@dataclass(frozen=True)
class DiscreteAllocation:
    """Integer seats per party and the resulting seat shares."""

    parties: tuple[PartyId, ...]
    constituency_seats: dict[PartyId, int]
    list_seats: dict[PartyId, int]
    total_seats: dict[PartyId, int]
    seat_share: dict[PartyId, float]

    def grand_total(self) -> int:
        return sum(self.total_seats.values())

    def leading_party(self) -> PartyId:
        return max(self.parties, key=lambda p: (self.total_seats[p], -self.parties.index(p)))


def _resolve(source: ElectionOrPools, formula: TransferFormula, config: ApportionmentConfig):
    """Pools and winners from either district data or a pool fixture."""
    if isinstance(source, ElectionInput):
        pools = correction_pools(source, formula).total
        winners = constituency_wins(source)
        if config.constituency_winners is not None:
            supplied = {p: config.constituency_winners.get(p, 0) for p in source.parties}
            if supplied != winners:
                raise WinnerMismatch(
                    f"supplied winners {supplied} contradict district data {winners}"
                )
        return tuple(source.parties), pools, winners
    pools = source.pools.get(formula)
    if pools is None:
        raise ValidationError(f"fixture has no pools for {formula.value}")
    if config.constituency_winners is not None:
        winners = {p: config.constituency_winners.get(p, 0) for p in source.parties}
    else:
        winners = {p: source.constituency_seats.get(p, 0) for p in source.parties}
    return tuple(source.parties), dict(pools), winners


def allocate_discrete(
    source: ElectionOrPools,
    formula: TransferFormula,
    config: ApportionmentConfig,
) -> DiscreteAllocation:
    """Full discrete allocation: constituency winners plus d'Hondt list seats."""
    parties, pools, winners = _resolve(source, formula, config)
    list_alloc = dhondt(
        pools, config.list_seats, threshold=config.threshold, party_order=parties
    )
    total = {p: winners.get(p, 0) + list_alloc[p] for p in parties}
    grand = sum(total.values())
    if grand == 0:
        raise ValidationError("allocation has no seats at all")
    share = {p: total[p] / grand for p in parties}
    return DiscreteAllocation(parties, dict(winners), list_alloc, total, share)


def seat_diff(current: DiscreteAllocation, reference: DiscreteAllocation) -> float:
    """Sum of squared seat-share differences between two allocations."""
    if set(current.parties) != set(reference.parties):
        raise PartyMismatch(
            f"allocations cover different parties: {current.parties} vs {reference.parties}"
        )
    return sum(
        (current.seat_share[p] - reference.seat_share[p]) ** 2 for p in current.parties
    )


TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class ScenarioRow:
    """One sweep entry: the allocation at a given number of list seats."""

    list_seats: int
    allocation: DiscreteAllocation
    diff: float
    supermajority_two_thirds: dict[PartyId, bool]


def _holds_fraction(allocation: DiscreteAllocation, party: PartyId, fraction: Fraction) -> bool:
    # seats/total >= fraction, decided in integers
    return (
        allocation.total_seats[party] * fraction.denominator
        >= fraction.numerator * allocation.grand_total()
    )


def sweep_list_seats(
    source: ElectionOrPools,
    formula: TransferFormula,
    seat_range: Iterable[int],
    reference: DiscreteAllocation,
    *,
    threshold=0,
) -> list[ScenarioRow]:
    """Rerun the allocation for every list-seat count in ``seat_range``.

    Each row carries the squared-difference score against ``reference`` and
    a per-party flag for holding at least two thirds of all seats.
    """
    rows = []
    for seats in seat_range:
        config = ApportionmentConfig(list_seats=seats, threshold=threshold)
        allocation = allocate_discrete(source, formula, config)
        rows.append(
            ScenarioRow(
                seats,
                allocation,
                seat_diff(allocation, reference),
                {
                    p: _holds_fraction(allocation, p, TWO_THIRDS)
                    for p in allocation.parties
                },
            )
        )
    if not rows:
        raise ValidationError("seat_range is empty")
    return rows


def min_diff_row(rows: Sequence[ScenarioRow]) -> ScenarioRow:
    """The sweep row closest to the reference (first on exact ties)."""
    return min(rows, key=lambda r: (r.diff, r.list_seats))


def supermajority_boundary(
    source: ElectionOrPools,
    formula: TransferFormula,
    fraction,
    seat_range: Iterable[int],
    *,
    threshold=0,
) -> int | None:
    """Largest list-seat count at which the leading party still holds a
    strict supermajority.

    Returns the largest L in ``seat_range`` where the leading party's total
    seat share strictly exceeds ``fraction`` (pass "2/3" or a Fraction for
    exact semantics), or None when no L qualifies. Exactly hitting the
    fraction does not count as exceeding it: a boundary marks where the
    strict majority survives.
    """
    cut = exact_fraction(fraction)
    if not 0 < cut <= 1:
        raise ValidationError(f"fraction must lie in (0, 1], got {fraction!r}")
    found = None
    for seats in seat_range:
        config = ApportionmentConfig(list_seats=seats, threshold=threshold)
        allocation = allocate_discrete(source, formula, config)
        leader = allocation.leading_party()
        if allocation.total_seats[leader] * cut.denominator > cut.numerator * allocation.grand_total():
            if found is None or seats > found:
                found = seats
    return found
