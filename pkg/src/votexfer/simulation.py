"""Monte Carlo study of two-party outcomes without gerrymandering.

Each run draws an independent dominant-party vote share for every district
from the uniform distribution on [k-h, k+h], evaluates the continuous
two-tier allocation under all three transfer formulas, and classifies which
subset of formulas hands the dominant party a majority (strict seat share
above one half). Counts over the 8 possible subsets plus the mean seat
shares summarize the trade-off between the formulas.

Reproducibility contract: run ``r`` draws from a counter-based Philox stream
keyed by ``(seed, r)``, so results are independent of execution order and a
summary is bit-for-bit reproducible from its config. Means are accumulated
with compensated summation (math.fsum) to keep them order-insensitive too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import FORMULAS, TransferFormula, check_alpha
from .errors import ValidationError

#: Canonical labels of the 8 majority subsets, most inclusive first.
CELL_LABELS = (
    "DVT+PVT+NVT",
    "DVT+PVT",
    "DVT+NVT",
    "PVT+NVT",
    "DVT",
    "PVT",
    "NVT",
    "none",
)

_MASK64 = 2**64 - 1


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of one simulation: uniform district shares on [k-h, k+h].

    The seed is mandatory; there is deliberately no wall-clock default.
    """

    k: float
    h: float
    alpha: float
    n_districts: int = 100
    runs: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.h < 0:
            raise ValidationError("h must be non-negative")
        if self.k - self.h < 0 or self.k + self.h > 1:
            raise ValidationError(
                f"district share support [{self.k - self.h}, {self.k + self.h}] "
                "must stay within [0, 1]; rejecting rather than clamping"
            )
        if self.n_districts < 1:
            raise ValidationError("n_districts must be at least 1")
        if self.runs < 1:
            raise ValidationError("runs must be at least 1")
        check_alpha(self.alpha)
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError("seed must be an integer")
        if not 0 <= self.seed <= _MASK64:
            raise ValidationError("seed must fit in 64 bits")


@dataclass(frozen=True)
class SimulationSummary:
    """Aggregated outcome of all runs.

    ``cells`` maps each majority-subset label to its run count (all 8 keys
    always present, summing to ``runs``). ``dvt_only_majority`` counts runs
    where DVT yields a majority but NVT does not, and vice versa for
    ``nvt_only_majority``. The reported per-formula means are mean *seat*
    shares (the DVT list share coincides with the mean vote share).
    """

    config: SimulationConfig
    cells: dict[str, int]
    mean_seat_share: dict[TransferFormula, float]
    dvt_only_majority: int
    nvt_only_majority: int


def run_rng(seed: int, run_index: int) -> np.random.Generator:
    """Counter-based substream for one run, independent of all others."""
    key = np.array([seed & _MASK64, run_index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def district_shares(config: SimulationConfig, run_index: int) -> np.ndarray:
    """The dominant party's district vote shares drawn for one run."""
    rng = run_rng(config.seed, run_index)
    return rng.uniform(config.k - config.h, config.k + config.h, config.n_districts)


def allocate_shares(shares: np.ndarray, alpha) -> dict[TransferFormula, float]:
    """Continuous seat share of the dominant party under each formula.

    ``shares`` holds the party's vote share per district; the other party
    holds the complement. Mirrors the integer pipeline in core: per district
    the loser's votes feed the losing pool and the winner's margin feeds the
    surplus pool. Ties at exactly one half go to the dominant party, which
    matches the party-order rule (measure zero under continuous draws).
    """
    shares = np.asarray(shares, dtype=float)
    n = shares.size
    if n == 0:
        raise ValidationError("need at least one district share")
    won = shares >= 0.5
    wins = int(won.sum())
    sum_all = float(shares.sum())
    sum_won = float(shares[won].sum())

    direct_a = sum_all
    losing_a = sum_all - sum_won
    losing_b = wins - sum_won
    surplus_a = 2.0 * sum_won - wins
    surplus_b = (n - wins) - 2.0 * losing_a

    constituency = wins / n
    result = {}
    for formula in FORMULAS:
        pool_a = direct_a
        total = float(n)  # direct pools sum to one vote mass per district
        if formula is not TransferFormula.DVT:
            pool_a += losing_a
            total += losing_a + losing_b
        if formula is TransferFormula.NVT:
            pool_a += surplus_a
            total += surplus_a + surplus_b
        list_share = pool_a / total
        result[formula] = alpha * constituency + (1 - alpha) * list_share
    return result


def majority_subset(seat_shares: dict[TransferFormula, float]) -> str:
    """Cell label for the formulas granting a strict (> 1/2) seat majority."""
    winning = [f.value for f in FORMULAS if seat_shares[f] > 0.5]
    return "+".join(winning) if winning else "none"


def run_simulation(config: SimulationConfig) -> SimulationSummary:
    """Execute all runs and aggregate majority cells and mean seat shares."""
    cells = {label: 0 for label in CELL_LABELS}
    shares_per_formula: dict[TransferFormula, list[float]] = {f: [] for f in FORMULAS}
    for run_index in range(config.runs):
        seat_shares = allocate_shares(district_shares(config, run_index), config.alpha)
        cells[majority_subset(seat_shares)] += 1
        for formula in FORMULAS:
            shares_per_formula[formula].append(seat_shares[formula])
    means = {
        formula: math.fsum(values) / config.runs
        for formula, values in shares_per_formula.items()
    }
    return SimulationSummary(
        config=config,
        cells=cells,
        mean_seat_share=means,
        dvt_only_majority=cells["DVT+PVT"] + cells["DVT"],
        nvt_only_majority=cells["PVT+NVT"] + cells["NVT"],
    )


def expected_dvt_seat_share(config: SimulationConfig) -> float:
    """Exact expectation of the DVT continuous seat share.

    The expected list share is k; the per-district win probability under the
    uniform draw is (k + h - 1/2) / (2h), clamped to {0, 1} on degenerate
    support that lies entirely on one side of one half.
    """
    k, h, alpha = config.k, config.h, config.alpha
    if h == 0:
        p_win = 1.0 if k >= 0.5 else 0.0
    else:
        p_win = min(1.0, max(0.0, (k + h - 0.5) / (2 * h)))
    return alpha * p_win + (1 - alpha) * k


def sweep_k(config: SimulationConfig, k_values: Iterable[float]) -> list[SimulationSummary]:
    """Re-run the simulation for several expected shares k, same seed.

    Sharing the seed across k values yields common random numbers, so the
    per-run draws are coupled and majority counts vary smoothly in k.
    """
    summaries = []
    for k in k_values:
        cfg = SimulationConfig(
            k=k,
            h=config.h,
            alpha=config.alpha,
            n_districts=config.n_districts,
            runs=config.runs,
            seed=config.seed,
        )
        summaries.append(run_simulation(cfg))
    return summaries
