"""votexfer: vote-transfer mixed-member electoral systems.

Correction formulas (DVT/PVT/NVT), continuous and d'Hondt seat allocation,
closed-form gerrymander analytics, Monte Carlo majority simulation, scenario
sweeps, and manipulation counterfactuals.
"""

from .analytic import (
    CurveSample,
    GerrymanderSide,
    PreferenceOrder,
    beats_proportional,
    build_gerrymander_instance,
    list_share_closed_form,
    max_alpha_beating_proportional,
    preference_order,
    seat_share_closed_form,
    seat_vote_curves,
)
from .apportionment import (
    ApportionmentConfig,
    DiscreteAllocation,
    PoolFixture,
    ScenarioRow,
    allocate_discrete,
    dhondt,
    min_diff_row,
    seat_diff,
    supermajority_boundary,
    sweep_list_seats,
)
from .core import (
    ContinuousAllocation,
    CorrectionPools,
    DistrictOutcome,
    DistrictResult,
    ElectionInput,
    TransferFormula,
    constituency_wins,
    continuous_allocation,
    correction_pools,
    district_winner,
)
from .manipulation import (
    CounterfactualReport,
    SplitPlan,
    evaluate_deliberate_loss,
    evaluate_stronghold_split,
)
from .simulation import (
    SimulationConfig,
    SimulationSummary,
    expected_dvt_seat_share,
    run_simulation,
    sweep_k,
)

__version__ = "0.1.0"

__all__ = [
    "ApportionmentConfig",
    "ContinuousAllocation",
    "CorrectionPools",
    "CounterfactualReport",
    "CurveSample",
    "DiscreteAllocation",
    "DistrictOutcome",
    "DistrictResult",
    "ElectionInput",
    "GerrymanderSide",
    "PoolFixture",
    "PreferenceOrder",
    "ScenarioRow",
    "SimulationConfig",
    "SimulationSummary",
    "SplitPlan",
    "TransferFormula",
    "allocate_discrete",
    "beats_proportional",
    "build_gerrymander_instance",
    "constituency_wins",
    "continuous_allocation",
    "correction_pools",
    "dhondt",
    "district_winner",
    "evaluate_deliberate_loss",
    "evaluate_stronghold_split",
    "expected_dvt_seat_share",
    "list_share_closed_form",
    "max_alpha_beating_proportional",
    "min_diff_row",
    "preference_order",
    "run_simulation",
    "seat_diff",
    "seat_share_closed_form",
    "seat_vote_curves",
    "supermajority_boundary",
    "sweep_k",
    "sweep_list_seats",
]
