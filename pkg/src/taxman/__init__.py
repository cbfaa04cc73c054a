"""Taxman: solver, bounds engine, and playground service for the Taxman game.

The package covers the classic game on the pot {1..N} as well as its
generalization to finite graded posets, the equivalence between legal play
and flat-alternating-cycle-free matchings on the cover graph, the born-free
greedy strategy, and matching-based upper/lower bounds on the optimal score.
"""

from taxman._core import backend_name
from taxman.errors import (
    FlatCycleDetected,
    GameNotOver,
    IllegalPick,
    IllegalSequence,
    InstanceTooLarge,
    InvalidPoset,
    NotAMatching,
    NotBipartite,
    OracleInfeasible,
    TaxmanError,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "TaxmanError",
    "IllegalPick",
    "GameNotOver",
    "IllegalSequence",
    "FlatCycleDetected",
    "NotAMatching",
    "InvalidPoset",
    "NotBipartite",
    "OracleInfeasible",
    "InstanceTooLarge",
    "__version__",
]
