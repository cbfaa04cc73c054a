"""Exception types shared across the package."""


class TaxmanError(Exception):
    """Base class for all package-specific errors."""


class IllegalPick(TaxmanError):
    """A pick that is not in play or would yield no tax.

    ``reason`` is ``"not-in-play"`` or ``"no-tax"``; ``index`` is set when the
    pick came from a batch sequence (0-based position of the offending move).
    """

    def __init__(self, pick, reason: str, index: int | None = None):
        self.pick = pick
        self.reason = reason
        self.index = index
        where = f" at index {index}" if index is not None else ""
        super().__init__(f"illegal pick {pick!r}{where}: {reason}")


class GameNotOver(TaxmanError):
    """Finalize was requested while legal picks remain."""


class IllegalSequence(TaxmanError):
    """A move sequence that does not replay legally."""


class FlatCycleDetected(TaxmanError):
    """The matching contains a flat alternating cycle, so no legal move
    order exists for it."""


class NotAMatching(TaxmanError):
    """Edge set with shared endpoints, or edges not present in the graph."""


class InvalidPoset(TaxmanError):
    """Relation or rank function violates the strict-order / grading axioms."""


class NotBipartite(TaxmanError):
    """Input graph is not a simple bipartite graph on the declared halves."""


class OracleInfeasible(TaxmanError):
    """Exact search was requested above the configured feasibility cap."""


class InstanceTooLarge(TaxmanError):
    """Brute-force enumeration was requested above its size cap."""
