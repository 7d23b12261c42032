"""Command-line interface.

Subcommands cover every pipeline: the built-in two-district example, the
closed-form seat-vote curves, Monte Carlo simulation, discrete allocation,
list-seat sweeps, manipulation counterfactuals, and vote-split statistics.
The ``report`` subcommand runs the full scenario study for a fixture and
renders figures next to the CSV output.

Exit codes: 0 success, 2 usage error, 3 data error. Data errors print a
machine-readable JSON object to stderr. Named fixtures resolve against
$VOTEXFER_FIXTURE_DIR first, then the fixtures shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import analytic, apportionment, dataio, manipulation, simulation
from .core import (
    FORMULAS,
    DistrictResult,
    ElectionInput,
    TransferFormula,
    continuous_allocation,
)
from .errors import ValidationError, VotexferError

FIXTURE_ENV = "VOTEXFER_FIXTURE_DIR"

#: The built-in two-district election: A wins c1 65:35, B wins c2 45:55.
EXAMPLE_ELECTION = ElectionInput(
    ("A", "B"),
    (
        DistrictResult("c1", {"A": 65, "B": 35}),
        DistrictResult("c2", {"A": 45, "B": 55}),
    ),
)


def resolve_fixture(token: str) -> Path:
    """A fixture argument is a path, or a name looked up in fixture dirs."""
    direct = Path(token)
    if direct.is_file():
        return direct
    candidates = []
    env_dir = os.environ.get(FIXTURE_ENV)
    if env_dir:
        candidates.append(Path(env_dir) / f"{token}.csv")
    candidates.append(Path(__file__).parent / "fixtures" / f"{token}.csv")
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise ValidationError(
        f"no fixture named {token!r} (searched {[str(c) for c in candidates]})"
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def _json_ready(value):
    """Round floats to 12 significant digits for emission, recursively."""
    if isinstance(value, float):
        return float(dataio.fmt_float(value))
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def _dump_json(payload, out_path: str | None) -> None:
    _emit(json.dumps(_json_ready(payload), indent=2) + "\n", out_path)


def _allocation_payload(allocation: apportionment.DiscreteAllocation) -> dict:
    return {
        "total_seats": allocation.grand_total(),
        "parties": [
            {
                "party": p,
                "constituency_seats": allocation.constituency_seats.get(p, 0),
                "list_seats": allocation.list_seats[p],
                "total_seats": allocation.total_seats[p],
                "seat_share": allocation.seat_share[p],
            }
            for p in allocation.parties
        ],
    }


def _parse_reference(token: str) -> tuple[TransferFormula, int]:
    try:
        formula_token, seats_token = token.split(":")
        return TransferFormula.parse(formula_token), int(seats_token)
    except (ValueError, TypeError):
        raise ValidationError(
            f"reference must look like 'nvt:93', got {token!r}"
        ) from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_example1(args) -> int:
    alpha = args.alpha
    lines = [f"two-district example, alpha = {alpha:g}", ""]
    lines.append("formula  constituency(A)  list_share(A)  seat_share(A)  seat_share(B)")
    totals = {}
    for formula in FORMULAS:
        allocation = continuous_allocation(EXAMPLE_ELECTION, formula, alpha)
        totals[formula] = allocation.seat_share
        lines.append(
            f"{formula.value:<8} "
            f"{dataio.fmt_float(allocation.constituency_share['A']):<16} "
            f"{dataio.fmt_float(allocation.list_share['A']):<14} "
            f"{dataio.fmt_float(allocation.seat_share['A']):<14} "
            f"{dataio.fmt_float(allocation.seat_share['B'])}"
        )
    lines.append("")
    for formula in FORMULAS:
        share = totals[formula]
        lines.append(
            f"{formula.value} total {share['A'] * 100:.6f}% (A) / {share['B'] * 100:.6f}% (B)"
        )
    print("\n".join(lines))
    return 0


def cmd_curves(args) -> int:
    step = apportionment.exact_fraction(args.grid_step)
    if not 0 < step <= Fraction(1, 2):
        raise ValidationError(f"grid step must lie in (0, 0.5], got {args.grid_step!r}")
    grid = []
    x = Fraction(1, 2)
    while x <= 1:
        grid.append(float(x))
        x += step
    samples = analytic.seat_vote_curves(args.alpha, grid)
    text = dataio.write_curves_csv(samples, args.out)
    if args.out is None:
        print(text, end="")
    if args.plot:
        from . import plotting

        plotting.plot_curves(samples, args.plot, alpha=args.alpha)
    return 0


def cmd_simulate(args) -> int:
    config = dataio.simulation_config_from_json(Path(args.config).read_text(encoding="utf-8"))
    summary = simulation.run_simulation(config)
    _emit(dataio.simulation_summary_to_json(summary) + "\n", args.out)
    if args.k_sweep:
        k_values = [float(tok) for tok in args.k_sweep.split(",") if tok.strip()]
        summaries = simulation.sweep_k(config, k_values)
        if args.sweep_out:
            dataio.write_k_sweep_csv(summaries, args.sweep_out)
        if args.plot:
            from . import plotting

            plotting.plot_k_sweep(summaries, args.plot)
    elif args.sweep_out or args.plot:
        raise ValidationError("--sweep-out/--plot need --k-sweep with k values")
    return 0


def _load_source(args) -> apportionment.ElectionOrPools:
    if args.election:
        return dataio.load_election_csv(args.election)
    return dataio.load_pools_csv(resolve_fixture(args.fixture))


def cmd_allocate(args) -> int:
    source = _load_source(args)
    formula = TransferFormula.parse(args.formula)
    config = apportionment.ApportionmentConfig(
        list_seats=args.list_seats,
        threshold=apportionment.exact_fraction(args.threshold),
    )
    allocation = apportionment.allocate_discrete(source, formula, config)
    payload = {
        "formula": formula.value,
        "list_seats": args.list_seats,
        "threshold": str(args.threshold),
        **_allocation_payload(allocation),
    }
    _dump_json(payload, args.out)
    return 0


def cmd_sweep(args) -> int:
    source = _load_source(args)
    formula = TransferFormula.parse(args.formula)
    threshold = apportionment.exact_fraction(args.threshold)
    ref_formula, ref_seats = _parse_reference(args.reference)
    reference = apportionment.allocate_discrete(
        source,
        ref_formula,
        apportionment.ApportionmentConfig(list_seats=ref_seats, threshold=threshold),
    )
    seat_range = range(args.min, args.max + 1)
    rows = apportionment.sweep_list_seats(
        source, formula, seat_range, reference, threshold=threshold
    )
    if args.out:
        dataio.write_sweep_csv(rows, formula, args.out)
    best = apportionment.min_diff_row(rows)
    payload = {
        "formula": formula.value,
        "reference": args.reference,
        "min_diff_at": best.list_seats,
        "min_diff": best.diff,
        "allocation_at_min": _allocation_payload(best.allocation),
    }
    if args.supermajority:
        payload["supermajority_fraction"] = args.supermajority
        payload["supermajority_boundary"] = apportionment.supermajority_boundary(
            source, formula, args.supermajority, seat_range, threshold=threshold
        )
    _dump_json(payload, args.summary_out)
    if args.plot_share or args.plot_diff:
        from . import plotting

        plotting.plot_sweep(
            {formula: rows},
            share_path=args.plot_share,
            diff_path=args.plot_diff,
            official_seats=ref_seats,
        )
    return 0


def cmd_manipulate(args) -> int:
    election = dataio.load_election_csv(args.election)
    try:
        plan = json.loads(Path(args.plan).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid plan JSON: {exc}") from None
    strategy = plan.get("strategy")
    formula = TransferFormula.parse(plan.get("formula", ""))
    alpha = plan.get("alpha")
    if alpha is None:
        raise ValidationError("plan requires an alpha")
    if strategy == "stronghold_split":
        split = manipulation.SplitPlan(
            district_id=plan["district_id"],
            party=plan["party"],
            kept_margin=int(plan["kept_margin"]),
        )
        report = manipulation.evaluate_stronghold_split(election, split, formula, alpha)
    elif strategy == "deliberate_loss":
        report = manipulation.evaluate_deliberate_loss(
            election, plan["district_id"], plan["party"], formula, alpha
        )
    else:
        raise ValidationError(
            f"unknown strategy {strategy!r}; expected stronghold_split or deliberate_loss"
        )
    payload = {
        "strategy": report.strategy,
        "district_id": plan["district_id"],
        "party": plan["party"],
        "formula": report.formula.value,
        "alpha": alpha,
        "baseline_share": report.baseline_share,
        "manipulated_share": report.manipulated_share,
        "delta": report.delta,
        "profitable": report.profitable,
    }
    _dump_json(payload, args.out)
    return 0


def cmd_votesplit(args) -> int:
    stats = dataio.load_votesplit_csv(resolve_fixture(args.rows))
    lines = ["party                          list_votes  candidate_votes  split"]
    for stat in stats:
        lines.append(
            f"{stat.party:<30} {stat.list_votes:>10}  {stat.candidate_votes:>15}  "
            f"{stat.split * 100:+.4f}%"
        )
    print("\n".join(lines))
    if args.out:
        rows = ["party,list_votes,candidate_votes,split"]
        rows.extend(
            f"{s.party},{s.list_votes},{s.candidate_votes},{dataio.fmt_float(s.split)}"
            for s in stats
        )
        Path(args.out).write_text("\n".join(rows) + "\n", encoding="utf-8")
    return 0


def cmd_report(args) -> int:
    source = dataio.load_pools_csv(resolve_fixture(args.fixture))
    threshold = apportionment.exact_fraction(args.threshold)
    ref_formula, ref_seats = _parse_reference(args.reference)
    reference = apportionment.allocate_discrete(
        source,
        ref_formula,
        apportionment.ApportionmentConfig(list_seats=ref_seats, threshold=threshold),
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seat_range = range(args.min, args.max + 1)
    rows_by_formula = {}
    summary = {
        "fixture": args.fixture,
        "reference": args.reference,
        "list_seat_range": [args.min, args.max],
        "formulas": {},
    }
    for formula in FORMULAS:
        rows = apportionment.sweep_list_seats(
            source, formula, seat_range, reference, threshold=threshold
        )
        rows_by_formula[formula] = rows
        dataio.write_sweep_csv(rows, formula, out_dir / f"sweep_{formula.value.lower()}.csv")
        best = apportionment.min_diff_row(rows)
        summary["formulas"][formula.value] = {
            "min_diff_at": best.list_seats,
            "min_diff": best.diff,
            "seats_at_min": dict(best.allocation.total_seats),
            "two_thirds_boundary": apportionment.supermajority_boundary(
                source, formula, Fraction(2, 3), seat_range, threshold=threshold
            ),
        }
    from . import plotting

    plotting.plot_sweep(
        rows_by_formula,
        share_path=out_dir / "seat_shares.png",
        diff_path=out_dir / "seat_diff.png",
        official_seats=ref_seats,
    )
    _dump_json(summary, str(out_dir / "summary.json"))
    print(f"report written to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votexfer",
        description="Vote-transfer mixed-member electoral systems toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example1", help="reproduce the built-in two-district example")
    p.add_argument("--alpha", type=float, default=0.6, help="constituency-seat share")
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("curves", help="emit the closed-form seat-vote curves")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--grid-step", default="0.01", help="x spacing (decimal or fraction)")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--plot", help="also render the curves to this image file")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("simulate", help="run the Monte Carlo majority study")
    p.add_argument("--config", required=True, help="JSON config with a mandatory seed")
    p.add_argument("--out", help="summary JSON path (default: stdout)")
    p.add_argument("--k-sweep", help="comma-separated k values to sweep")
    p.add_argument("--sweep-out", help="CSV path for the k sweep")
    p.add_argument("--plot", help="render the k sweep to this image file")
    p.set_defaults(func=cmd_simulate)

    for name, configure in (("allocate", cmd_allocate), ("sweep", cmd_sweep)):
        p = sub.add_parser(
            name,
            help="discrete d'Hondt allocation" if name == "allocate" else "scenario sweep over list seats",
        )
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--fixture", help="pool fixture name or CSV path")
        group.add_argument("--election", help="per-district election CSV path")
        p.add_argument("--formula", required=True, help="dvt, pvt or nvt")
        p.add_argument("--threshold", default="0.05", help="entry threshold (e.g. 0.05)")
        if name == "allocate":
            p.add_argument("--list-seats", type=int, required=True)
            p.add_argument("--out", help="JSON output path (default: stdout)")
        else:
            p.add_argument("--min", type=int, default=50)
            p.add_argument("--max", type=int, default=150)
            p.add_argument("--reference", default="nvt:93", help="formula:list_seats")
            p.add_argument("--out", help="CSV output path for the sweep rows")
            p.add_argument("--summary-out", help="JSON summary path (default: stdout)")
            p.add_argument("--supermajority", help="report the boundary for this fraction (e.g. 2/3)")
            p.add_argument("--plot-share", help="render the share-vs-seats figure here")
            p.add_argument("--plot-diff", help="render the diff-vs-seats figure here")
        p.set_defaults(func=configure)

    p = sub.add_parser("manipulate", help="evaluate a manipulation plan")
    p.add_argument("--election", required=True, help="per-district election CSV path")
    p.add_argument("--plan", required=True, help="JSON plan path")
    p.add_argument("--out", help="JSON report path (default: stdout)")
    p.set_defaults(func=cmd_manipulate)

    p = sub.add_parser("votesplit", help="list-vs-candidate vote statistics")
    p.add_argument("--rows", required=True, help="CSV with party,list_votes,candidate_votes")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_votesplit)

    p = sub.add_parser("report", help="full scenario study with figures")
    p.add_argument("--fixture", default="hungary2014")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threshold", default="0.05")
    p.add_argument("--reference", default="nvt:93")
    p.add_argument("--min", type=int, default=50)
    p.add_argument("--max", type=int, default=150)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VotexferError as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        return 3
    except OSError as exc:
        payload = {
            "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "path": getattr(exc, "filename", None),
            }
        }
        print(json.dumps(payload), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
