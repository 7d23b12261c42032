"""Closed-form two-party results under extreme gerrymandering.

With two parties and a fixed national vote share ``x`` for the dominant
party, the outcome is determined once one side controls the district map:

* dominant side - the dominant party draws the map and wins every district;
* inferior side - the other party draws the map and wins a ``2(1-x)``
  fraction of districts, each by an arbitrarily small margin, while the
  dominant party takes 100% of the rest.

Both extremes admit closed-form list and seat shares for each transfer
formula, which this module evaluates, compares against the proportional
benchmark, and materializes as synthetic integer elections so the generic
pipeline in :mod:`votexfer.core` can be cross-checked against the formulas.

Functions accept ``x`` and ``alpha`` as floats or Fractions; predicates are
decided in exact rational arithmetic, so grid scans are reproducible down to
boundary cases.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple

from .core import (
    FORMULAS,
    DistrictResult,
    ElectionInput,
    TransferFormula,
    check_alpha,
)
from .errors import InfeasibleConstruction, ValidationError

PROPORTIONAL = "proportional"


class GerrymanderSide(Enum):
    """Which party controls the district boundaries."""

    DOMINANT = "dominant"
    INFERIOR = "inferior"

    @classmethod
    def parse(cls, token: str) -> "GerrymanderSide":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValidationError(f"unknown gerrymander side: {token!r}") from None


SIDES = (GerrymanderSide.DOMINANT, GerrymanderSide.INFERIOR)


def _check_x(x) -> None:
    if not 0.5 <= x <= 1:
        raise ValidationError(f"dominant vote share x must lie in [0.5, 1], got {x!r}")


def list_share_closed_form(x, side: GerrymanderSide, formula: TransferFormula):
    """Dominant party's normalized list share in the extreme case.

    Dominant side: DVT -> x, PVT -> x/(2-x), NVT -> (3x-1)/(1+x).
    Inferior side: DVT -> x, PVT -> 1/(2-x), NVT -> 2x/(1+x).
    """
    _check_x(x)
    if formula is TransferFormula.DVT:
        return x
    if side is GerrymanderSide.DOMINANT:
        if formula is TransferFormula.PVT:
            return x / (2 - x)
        return (3 * x - 1) / (1 + x)
    if formula is TransferFormula.PVT:
        return 1 / (2 - x)
    return 2 * x / (1 + x)


def constituency_share_closed_form(x, side: GerrymanderSide):
    """Dominant party's share of districts won: 1, or 2x-1 when the other
    side draws the map (winning a 2(1-x) fraction marginally)."""
    _check_x(x)
    if side is GerrymanderSide.DOMINANT:
        return 1
    return 2 * x - 1


def seat_share_closed_form(x, alpha, side: GerrymanderSide, formula: TransferFormula):
    """Dominant party's total seat share in the extreme case."""
    _check_x(x)
    check_alpha(alpha)
    constituency = 1 if side is GerrymanderSide.DOMINANT else 2 * x - 1
    return alpha * constituency + (1 - alpha) * list_share_closed_form(x, side, formula)


def beats_proportional(x, alpha, side: GerrymanderSide, formula: TransferFormula) -> bool:
    """Whether the extreme-case seat share is at least the vote share x.

    Decided exactly: the inputs are converted to rationals (floats convert to
    their exact binary value) and the sign of ``seat_share - x`` is resolved
    by integer cross-multiplication, so grid scans cannot flip on rounding.
    """
    _check_x(x)
    check_alpha(alpha)
    px, qx = Fraction(x).as_integer_ratio()
    pa, qa = Fraction(alpha).as_integer_ratio()
    # Each branch is the exact factorization of sign(seat_share - x) >= 0
    # with the positive multipliers (2-x), (1+x) and denominators removed.
    if side is GerrymanderSide.DOMINANT:
        if formula is TransferFormula.DVT:
            return True  # alpha*(1-x) >= 0 on the whole domain
        if formula is TransferFormula.PVT:
            # (x-1)(x-2a) >= 0 with x <= 1
            return px == qx or px * qa <= 2 * pa * qx
        # NVT: (1-x)(2a+x-1) >= 0 with x <= 1
        return px * qa >= (qa - 2 * pa) * qx
    if formula is TransferFormula.DVT:
        return pa == 0 or px == qx  # alpha*(x-1) >= 0
    if formula is TransferFormula.PVT:
        # (x-1)((1-2a)x-(1-3a)) >= 0 with x <= 1
        return px == qx or (qa - 2 * pa) * px <= (qa - 3 * pa) * qx
    # NVT: (x-1)((1-2a)x-a) <= 0 with x <= 1
    return px == qx or (qa - 2 * pa) * px >= pa * qx


class PreferenceOrder(NamedTuple):
    """Formulas ranked by the dominant party's seat share, best first.

    ``tiers`` groups formulas whose shares are exactly equal; ``ranking`` is
    the flattened order (ties broken DVT, PVT, NVT for stability).
    """

    ranking: tuple[TransferFormula, ...]
    tiers: tuple[tuple[TransferFormula, ...], ...]

    @property
    def has_ties(self) -> bool:
        return len(self.tiers) < len(self.ranking)


def preference_order(x, alpha, side: GerrymanderSide) -> PreferenceOrder:
    """Rank the three formulas for the dominant party at (x, alpha).

    Shares are compared as exact rationals, so ties (x = 1, or alpha = 1)
    are detected reliably.
    """
    _check_x(x)
    check_alpha(alpha)
    xf, af = Fraction(x), Fraction(alpha)
    shares = {f: seat_share_closed_form(xf, af, side, f) for f in FORMULAS}
    tiers: list[tuple[TransferFormula, ...]] = []
    for f in sorted(FORMULAS, key=lambda f: -shares[f]):
        if tiers and shares[tiers[-1][0]] == shares[f]:
            tiers[-1] = tiers[-1] + (f,)
        else:
            tiers.append((f,))
    ranking = tuple(f for tier in tiers for f in tier)
    return PreferenceOrder(ranking, tuple(tiers))


def max_alpha_beating_proportional(x, formula: TransferFormula):
    """Largest constituency-seat share alpha at which the dominant party can
    still beat the proportional rule on the inferior side.

    PVT -> (1-x)/(3-2x), decreasing in x and never above 1/4;
    NVT -> x/(1+2x), increasing in x and never above 1/3.
    Undefined for DVT (which never beats proportional on that side).
    """
    _check_x(x)
    if formula is TransferFormula.PVT:
        return (1 - x) / (3 - 2 * x)
    if formula is TransferFormula.NVT:
        return x / (1 + 2 * x)
    raise ValidationError("no alpha bound is defined for DVT")


class CurveSample(NamedTuple):
    """One point of a seat-vote curve, ready for CSV emission."""

    x: float
    side: str
    formula: str
    seat_share: float


def seat_vote_curves(alpha, grid: Iterable[float]) -> list[CurveSample]:
    """Sample the proportional diagonal plus the six extreme-case curves.

    Emits curve-major blocks: the diagonal first, then (side, formula) in a
    fixed order, each sampled over ``grid`` (vote shares in [0.5, 1]).
    """
    check_alpha(alpha)
    xs = list(grid)
    for x in xs:
        _check_x(x)
    samples = [CurveSample(x, PROPORTIONAL, PROPORTIONAL, x) for x in xs]
    for side in SIDES:
        for formula in FORMULAS:
            samples.extend(
                CurveSample(
                    x,
                    side.value,
                    formula.value,
                    seat_share_closed_form(x, alpha, side, formula),
                )
                for x in xs
            )
    return samples


DOMINANT_PARTY = "A"
INFERIOR_PARTY = "B"


def build_gerrymander_instance(
    x,
    n_districts: int,
    side: GerrymanderSide,
    *,
    epsilon: float = 1e-6,
    district_size: int = 1_000_000,
) -> ElectionInput:
    """Materialize an extreme-case election as exact integer vote counts.

    Districts all cast ``district_size`` votes. On the dominant side party A
    polls ``x`` of every district. On the inferior side party B wins a
    ``2(1-x)`` fraction of districts by ``epsilon * district_size`` votes
    (rounded up to an even count) and A takes 100% of the rest; the
    ``2(1-x) * n_districts`` product must be an integer, otherwise the
    requested x cannot be realized and the builder refuses rather than
    silently rounding.

    Shares computed from the instance approach the closed forms as epsilon
    shrinks (the deviation is O(epsilon), comfortably within 5*epsilon).
    """
    _check_x(x)
    if n_districts < 1:
        raise InfeasibleConstruction("need at least one district")
    size = int(district_size)
    if size < 2 or size % 2:
        raise InfeasibleConstruction("district_size must be an even integer >= 2")
    xf = Fraction(x)

    if side is GerrymanderSide.DOMINANT:
        a_votes = round(xf * size)
        b_votes = size - a_votes
        if a_votes < b_votes:
            raise InfeasibleConstruction(
                f"x={x!r} cannot win a district of {size} votes"
            )
        districts = [
            DistrictResult(f"d{i:03d}", {DOMINANT_PARTY: a_votes, INFERIOR_PARTY: b_votes})
            for i in range(1, n_districts + 1)
        ]
        return ElectionInput((DOMINANT_PARTY, INFERIOR_PARTY), tuple(districts))

    m_exact = 2 * (1 - xf) * n_districts
    m = round(m_exact)
    if abs(m_exact - m) > Fraction(1, 10**9):
        raise InfeasibleConstruction(
            f"2*(1-x)*n_districts = {float(m_exact):.6f} is not an integer; "
            "adjust x or the district count"
        )
    if not 0 <= m <= n_districts:
        raise InfeasibleConstruction(
            f"inferior side needs {m} marginal districts out of {n_districts}"
        )
    if epsilon <= 0:
        raise InfeasibleConstruction("epsilon must be positive")
    margin = max(2, 2 * math.ceil(epsilon * size / 2))
    if margin > size:
        raise InfeasibleConstruction(
            f"epsilon={epsilon!r} needs a margin of {margin} votes in a "
            f"district of {size}"
        )

    districts = []
    for i in range(1, m + 1):
        districts.append(
            DistrictResult(
                f"d{i:03d}",
                {
                    DOMINANT_PARTY: (size - margin) // 2,
                    INFERIOR_PARTY: (size + margin) // 2,
                },
            )
        )
    for i in range(m + 1, n_districts + 1):
        districts.append(
            DistrictResult(f"d{i:03d}", {DOMINANT_PARTY: size, INFERIOR_PARTY: 0})
        )
    return ElectionInput((DOMINANT_PARTY, INFERIOR_PARTY), tuple(districts))
