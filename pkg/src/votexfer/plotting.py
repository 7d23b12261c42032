"""Figure rendering for the report outputs.

Every plot function takes already-computed data and writes a file; nothing
here recomputes results. The Agg backend is forced so rendering works in
headless environments.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analytic import PROPORTIONAL, CurveSample
from .apportionment import ScenarioRow
from .core import TransferFormula
from .simulation import SimulationSummary

_FORMULA_COLORS = {"DVT": "tab:red", "PVT": "tab:orange", "NVT": "tab:blue"}
_SIDE_STYLES = {"dominant": "-", "inferior": "--"}


def plot_curves(samples: Sequence[CurveSample], path, *, alpha=None) -> None:
    """Seat share vs vote share: the diagonal plus the six extreme curves."""
    fig, ax = plt.subplots(figsize=(8, 5))
    curves: dict[tuple[str, str], list[CurveSample]] = {}
    for sample in samples:
        curves.setdefault((sample.side, sample.formula), []).append(sample)
    for (side, formula), points in curves.items():
        points.sort(key=lambda s: s.x)
        xs = [p.x for p in points]
        ys = [p.seat_share for p in points]
        if side == PROPORTIONAL:
            ax.plot(xs, ys, "k:", linewidth=1, label="proportional")
        else:
            ax.plot(
                xs,
                ys,
                linestyle=_SIDE_STYLES[side],
                color=_FORMULA_COLORS[formula],
                label=f"{formula} ({side})",
            )
    ax.set_xlabel("vote share of the dominant party")
    ax.set_ylabel("seat share of the dominant party")
    title = "Seat-vote curves under extreme gerrymandering"
    if alpha is not None:
        title += f" (alpha = {alpha:g})"
    ax.set_title(title)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(
    rows_by_formula: dict[TransferFormula, Sequence[ScenarioRow]],
    share_path=None,
    diff_path=None,
    *,
    party=None,
    official_seats: int | None = None,
) -> None:
    """Share-vs-L and difference-vs-L panels of a list-seat sweep."""
    if share_path is not None:
        fig, ax = plt.subplots(figsize=(8, 5))
        lead = party
        for formula, rows in rows_by_formula.items():
            if lead is None:
                lead = rows[0].allocation.leading_party()
            ax.plot(
                [r.list_seats for r in rows],
                [r.allocation.seat_share[lead] for r in rows],
                color=_FORMULA_COLORS[formula.value],
                label=formula.value,
            )
        ax.axhline(2 / 3, color="brown", linestyle="-.", linewidth=1, label="two thirds")
        if official_seats is not None:
            ax.axvline(official_seats, color="green", linewidth=1)
        ax.set_xlabel("number of list seats")
        ax.set_ylabel(f"seat share of {lead}")
        ax.set_title("Leading party's seat share by list-seat count")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(share_path, dpi=150)
        plt.close(fig)

    if diff_path is not None:
        fig, ax = plt.subplots(figsize=(8, 5))
        for formula, rows in rows_by_formula.items():
            ax.plot(
                [r.list_seats for r in rows],
                [r.diff for r in rows],
                color=_FORMULA_COLORS[formula.value],
                label=formula.value,
            )
        if official_seats is not None:
            ax.axvline(official_seats, color="green", linewidth=1)
        ax.set_xlabel("number of list seats")
        ax.set_ylabel("squared seat-share difference vs reference")
        ax.set_title("Distance from the reference allocation")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(diff_path, dpi=150)
        plt.close(fig)


def plot_k_sweep(summaries: Sequence[SimulationSummary], path) -> None:
    """Mean seat shares (lines) and exclusive-majority counts (bars) by k."""
    fig, ax_counts = plt.subplots(figsize=(8, 5))
    ax_means = ax_counts.twinx()
    ks = [s.config.k for s in summaries]
    width = (max(ks) - min(ks)) / max(1, len(ks) - 1) * 0.18 if len(ks) > 1 else 0.002
    ax_counts.bar(
        [k - width / 2 for k in ks],
        [s.dvt_only_majority for s in summaries],
        width=width,
        color="tab:red",
        alpha=0.6,
        label="majority under DVT only",
    )
    ax_counts.bar(
        [k + width / 2 for k in ks],
        [s.nvt_only_majority for s in summaries],
        width=width,
        color="tab:blue",
        alpha=0.6,
        label="majority under NVT only",
    )
    for formula in (TransferFormula.DVT, TransferFormula.NVT):
        ax_means.plot(
            ks,
            [s.mean_seat_share[formula] for s in summaries],
            color=_FORMULA_COLORS[formula.value],
            linewidth=2,
            label=f"mean seat share, {formula.value}",
        )
    ax_counts.set_xlabel("expected district share k")
    ax_counts.set_ylabel("runs with an exclusive majority")
    ax_means.set_ylabel("mean seat share")
    ax_counts.set_title("DVT vs NVT across expected vote share")
    handles1, labels1 = ax_counts.get_legend_handles_labels()
    handles2, labels2 = ax_means.get_legend_handles_labels()
    ax_counts.legend(handles1 + handles2, labels1 + labels2, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
