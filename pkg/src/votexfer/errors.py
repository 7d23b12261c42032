"""Exception hierarchy shared by all votexfer modules."""


class VotexferError(Exception):
    """Base class for all domain errors raised by this package."""


class ValidationError(VotexferError):
    """An input violates a structural invariant; the message names it."""


class ParseError(VotexferError):
    """A file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TiedDistrict(VotexferError):
    """A district has a tied winner and strict tie handling is enabled."""


class InfeasibleConstruction(VotexferError):
    """A synthetic election with the requested parameters cannot be built."""


class AllPartiesExcluded(VotexferError):
    """No party passes the threshold but list seats remain to assign."""


class WinnerMismatch(VotexferError):
    """Supplied constituency winners contradict the district-level data."""


class PartyMismatch(VotexferError):
    """Two allocations being compared cover different party sets."""


class NotAWinner(VotexferError):
    """A manipulation plan names a party that did not win the district."""


class DeltaTooLarge(VotexferError):
    """A stronghold-split plan keeps more margin than the winner has."""


class MonotonicityViolation(VotexferError):
    """Pool totals break the required DVT <= PVT <= NVT ordering."""


class ZeroCandidateVotes(VotexferError):
    """A vote-splitting statistic is undefined for zero candidate votes."""
