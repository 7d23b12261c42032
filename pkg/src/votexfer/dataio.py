"""File formats: election CSV, pool-fixture CSV, simulation JSON, sweeps.

All files are UTF-8, comma-delimited, without quoting; party tokens are
ASCII-safe aliases of accented names so fixtures hash identically across
platforms. Integers are plain decimals; derived floats are emitted with 12
significant digits. Loaders validate as they parse: structural problems
raise ParseError with the line number, domain problems raise the matching
invariant error.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .analytic import CurveSample
from .apportionment import PoolFixture, ScenarioRow
from .core import DistrictResult, ElectionInput, PartyId, TransferFormula
from .errors import (
    MonotonicityViolation,
    ParseError,
    ValidationError,
    ZeroCandidateVotes,
)
from .simulation import CELL_LABELS, SimulationConfig, SimulationSummary

ELECTION_HEADER = ["district_id", "party", "votes"]
POOLS_HEADER = ["party", "constituency_seats", "pool_dvt", "pool_pvt", "pool_nvt"]
CURVES_HEADER = ["x", "side", "formula", "seat_share"]
SWEEP_HEADER = [
    "list_seats",
    "formula",
    "party",
    "seats",
    "seat_share",
    "diff",
    "two_thirds_flag",
]
KSWEEP_HEADER = [
    "k",
    "formula",
    "mean_seat_share",
    "dvt_only_majority",
    "nvt_only_majority",
]


def fmt_float(value: float) -> str:
    """Canonical float rendering: 12 significant digits."""
    return format(float(value), ".12g")


def _read_rows(path) -> list[list[str]]:
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        raise ParseError(f"{path}: file is empty")
    return list(csv.reader(io.StringIO(text)))


def _check_header(rows: list[list[str]], expected: list[str], path) -> None:
    if not rows or [c.strip() for c in rows[0]] != expected:
        raise ParseError(
            f"{path}: expected header {','.join(expected)!r}", line=1
        )


def _int_field(value: str, what: str, line: int) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {value!r}", line=line) from None


def load_election_csv(path) -> ElectionInput:
    """Read per-district results (header ``district_id,party,votes``).

    Districts and parties keep their first-appearance order; that order is
    the tie-breaking order. Duplicate (district, party) rows are rejected.
    ``equal_size`` is set when every district cast the same number of votes.
    """
    rows = _read_rows(path)
    _check_header(rows, ELECTION_HEADER, path)
    parties: list[PartyId] = []
    districts: dict[str, dict[PartyId, int]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        district_id, party, votes_text = (c.strip() for c in row)
        votes = _int_field(votes_text, f"votes for {party!r}", lineno)
        if votes < 0:
            raise ValidationError(
                f"district {district_id!r}: negative vote count for {party!r}"
            )
        if party not in parties:
            parties.append(party)
        district = districts.setdefault(district_id, {})
        if party in district:
            raise ParseError(
                f"duplicate entry for ({district_id!r}, {party!r})", line=lineno
            )
        district[party] = votes
    built = tuple(
        DistrictResult(district_id, votes) for district_id, votes in districts.items()
    )
    totals = {d.total() for d in built}
    return ElectionInput(tuple(parties), built, equal_size=len(totals) == 1)


def dump_election_csv(election: ElectionInput, path=None) -> str:
    """Canonical serialization of an election; returns the text written."""
    out = io.StringIO()
    out.write(",".join(ELECTION_HEADER) + "\n")
    for district in election.districts:
        for party in election.parties:
            if party in district.votes:
                out.write(f"{district.district_id},{party},{district.votes[party]}\n")
    text = out.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_pools_csv(path) -> PoolFixture:
    """Read aggregate list pools per formula plus constituency winners.

    Header ``party,constituency_seats,pool_dvt,pool_pvt,pool_nvt``. Pools
    must satisfy NVT >= PVT >= DVT per party (the corrections only ever add
    votes); violations raise MonotonicityViolation.
    """
    rows = _read_rows(path)
    _check_header(rows, POOLS_HEADER, path)
    parties: list[PartyId] = []
    seats: dict[PartyId, int] = {}
    pools = {formula: {} for formula in TransferFormula}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 5:
            raise ParseError(f"expected 5 fields, got {len(row)}", line=lineno)
        party = row[0].strip()
        if party in parties:
            raise ParseError(f"duplicate party {party!r}", line=lineno)
        won = _int_field(row[1], "constituency_seats", lineno)
        dvt = _int_field(row[2], "pool_dvt", lineno)
        pvt = _int_field(row[3], "pool_pvt", lineno)
        nvt = _int_field(row[4], "pool_nvt", lineno)
        if min(won, dvt, pvt, nvt) < 0:
            raise ValidationError(f"party {party!r}: negative count")
        if not dvt <= pvt <= nvt:
            raise MonotonicityViolation(
                f"party {party!r}: pools must satisfy DVT <= PVT <= NVT, "
                f"got {dvt}, {pvt}, {nvt}"
            )
        parties.append(party)
        seats[party] = won
        pools[TransferFormula.DVT][party] = dvt
        pools[TransferFormula.PVT][party] = pvt
        pools[TransferFormula.NVT][party] = nvt
    if not parties:
        raise ParseError(f"{path}: no data rows")
    return PoolFixture(tuple(parties), seats, pools)


def dump_pools_csv(fixture: PoolFixture, path=None) -> str:
    """Canonical serialization of a pool fixture."""
    out = io.StringIO()
    out.write(",".join(POOLS_HEADER) + "\n")
    for party in fixture.parties:
        out.write(
            f"{party},{fixture.constituency_seats.get(party, 0)},"
            f"{fixture.pools[TransferFormula.DVT][party]},"
            f"{fixture.pools[TransferFormula.PVT][party]},"
            f"{fixture.pools[TransferFormula.NVT][party]}\n"
        )
    text = out.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


@dataclass(frozen=True)
class VoteSplitStat:
    """How a party's separate list vote compares to its candidate vote.

    ``split`` is (list - candidate) / candidate: positive when the party
    drew more list votes than candidate votes.
    """

    party: PartyId
    list_votes: int
    candidate_votes: int
    split: float


def vote_split_stats(rows: Iterable[tuple[PartyId, int, int]]) -> list[VoteSplitStat]:
    """Vote-splitting statistic per party from (party, list, candidate) rows."""
    stats = []
    for party, list_votes, candidate_votes in rows:
        if candidate_votes <= 0:
            raise ZeroCandidateVotes(
                f"party {party!r}: the statistic needs positive candidate votes"
            )
        if list_votes < 0:
            raise ValidationError(f"party {party!r}: negative list votes")
        stats.append(
            VoteSplitStat(
                party,
                list_votes,
                candidate_votes,
                (list_votes - candidate_votes) / candidate_votes,
            )
        )
    return stats


def load_votesplit_csv(path) -> list[VoteSplitStat]:
    """Read ``party,list_votes,candidate_votes`` rows and compute splits."""
    rows = _read_rows(path)
    _check_header(rows, ["party", "list_votes", "candidate_votes"], path)
    parsed = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        parsed.append(
            (
                row[0].strip(),
                _int_field(row[1], "list_votes", lineno),
                _int_field(row[2], "candidate_votes", lineno),
            )
        )
    return vote_split_stats(parsed)


def simulation_config_from_json(text: str) -> SimulationConfig:
    """Parse a simulation config; the seed is required, never defaulted."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON config: {exc}") from None
    if not isinstance(payload, dict):
        raise ParseError("config must be a JSON object")
    if "seed" not in payload:
        raise ValidationError("simulation config requires an explicit seed")
    known = {"k", "h", "alpha", "n_districts", "runs", "seed"}
    unknown = set(payload) - known
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    missing = {"k", "h", "alpha"} - set(payload)
    if missing:
        raise ValidationError(f"config keys missing: {sorted(missing)}")
    return SimulationConfig(**payload)


def simulation_summary_to_json(summary: SimulationSummary) -> str:
    """Serialize a summary; floats carry 12 significant digits."""
    config = summary.config
    payload = {
        "config": {
            "k": config.k,
            "h": config.h,
            "alpha": config.alpha,
            "n_districts": config.n_districts,
            "runs": config.runs,
            "seed": config.seed,
        },
        "cells": {label: summary.cells[label] for label in CELL_LABELS},
        "mean_seat_share": {
            formula.value: float(fmt_float(summary.mean_seat_share[formula]))
            for formula in TransferFormula
        },
        "dvt_only_majority": summary.dvt_only_majority,
        "nvt_only_majority": summary.nvt_only_majority,
    }
    return json.dumps(payload, indent=2)


def write_curves_csv(samples: Sequence[CurveSample], path=None) -> str:
    """Seat-vote curve samples as ``x,side,formula,seat_share`` rows."""
    out = io.StringIO()
    out.write(",".join(CURVES_HEADER) + "\n")
    for sample in samples:
        out.write(
            f"{fmt_float(sample.x)},{sample.side},{sample.formula},"
            f"{fmt_float(sample.seat_share)}\n"
        )
    text = out.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def write_sweep_csv(
    rows: Sequence[ScenarioRow], formula: TransferFormula, path=None
) -> str:
    """Scenario sweep as one CSV row per (list-seat count, party)."""
    out = io.StringIO()
    out.write(",".join(SWEEP_HEADER) + "\n")
    for row in rows:
        for party in row.allocation.parties:
            flag = "true" if row.supermajority_two_thirds[party] else "false"
            out.write(
                f"{row.list_seats},{formula.value},{party},"
                f"{row.allocation.total_seats[party]},"
                f"{fmt_float(row.allocation.seat_share[party])},"
                f"{fmt_float(row.diff)},{flag}\n"
            )
    text = out.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def write_k_sweep_csv(summaries: Sequence[SimulationSummary], path=None) -> str:
    """Per-k simulation sweep rows for the majority/mean-share comparison."""
    out = io.StringIO()
    out.write(",".join(KSWEEP_HEADER) + "\n")
    for summary in summaries:
        for formula in TransferFormula:
            out.write(
                f"{fmt_float(summary.config.k)},{formula.value},"
                f"{fmt_float(summary.mean_seat_share[formula])},"
                f"{summary.dvt_only_majority},{summary.nvt_only_majority}\n"
            )
    text = out.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
