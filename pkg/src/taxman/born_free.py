"""The born-free winning strategy.

The matching is built greedily: scan primes p in descending order and, for
each p, the pairs (x, p*x) by descending x, keeping every pair whose
endpoints are still free.  The construction never creates a flat
alternating cycle, so the matching can always be ordered into legal play.
The p_max-restricted variant (primes <= 5) admits a closed-form lower
bound on the fraction of the pot it wins, which crosses one half just
below 847.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from taxman import _core
from taxman.cover_graph import Matching, build_divisor_cover_graph
from taxman.matching_bridge import (
    OrderedPlay,
    order_matching_standard,
    replay_standard,
    sequence_score,
    sequence_to_matching,
)
from taxman.number_theory import SpfTable, build_spf, primes_up_to

# Explicit winning sequences for the two pot sizes where the greedy
# matching scores less than half the pot.
WIN_SUBSTITUTIONS: dict[int, tuple[int, ...]] = {
    7: (7, 4, 6),
    13: (13, 9, 10, 8, 12),
}


@dataclass(frozen=True)
class BornFreeConfig:
    """Pot size plus an optional prime cap (p_max=5 is the analyzed variant)."""

    n: int
    p_max: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("pot size must be >= 1")
        if self.p_max is not None:
            if self.p_max < 2 or any(self.p_max % d == 0 for d in range(2, self.p_max)):
                raise ValueError("p_max must be a prime >= 2")


def born_free_matching(cfg: BornFreeConfig, spf: SpfTable | None = None) -> Matching:
    """Greedy endpoint-disjoint matching over the pot {1..cfg.n}."""
    n = cfg.n
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    primes = primes_up_to(n, spf) if n >= 2 else []
    if cfg.p_max is not None:
        primes = [p for p in primes if p <= cfg.p_max]
    lowers, uppers = _core.born_free_pairs(n, primes)
    pairs = sorted(zip(lowers, uppers))
    return Matching(pairs=tuple(pairs), weight=sum(uppers))


def born_free_play(cfg: BornFreeConfig, spf: SpfTable | None = None) -> OrderedPlay:
    """The playable strategy: order the greedy matching into a legal game.

    For the unrestricted strategy the pots 7 and 13, where the matching
    scores below half, are replaced by their known winning sequences.
    """
    n = cfg.n
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    if cfg.p_max is None and n in WIN_SUBSTITUTIONS:
        seq = replay_standard(n, WIN_SUBSTITUTIONS[n], spf)
        matching = sequence_to_matching(seq, build_divisor_cover_graph(n, spf))
        return OrderedPlay(sequence=seq, matching=matching, score=sequence_score(seq))
    matching = born_free_matching(cfg, spf)
    seq = order_matching_standard(matching, build_divisor_cover_graph(n, spf), spf)
    return OrderedPlay(sequence=seq, matching=matching, score=matching.weight)


def born_free_restricted(
    n: int, in_play, spf: SpfTable | None = None, p_max: int | None = None
) -> tuple[Matching, list[int]]:
    """Greedy matching over an arbitrary in-play subset of {1..n}, plus a
    pick order that is legal from that position.

    Mid-game extension of the strategy: the greedy scan simply skips pairs
    with a dead endpoint, which keeps the cycle-freeness argument intact.
    """
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    alive = bytearray(n + 1)
    for k in in_play:
        alive[k] = 1
    primes = primes_up_to(n, spf) if n >= 2 else []
    if p_max is not None:
        primes = [p for p in primes if p <= p_max]
    lowers, uppers = _core.born_free_pairs(n, primes, alive)
    picks, ok, _rank = _core.order_core(n, lowers, uppers, spf.spf)
    if not ok:  # pragma: no cover - the greedy scan cannot produce a cycle
        raise AssertionError("greedy matching unexpectedly contained a flat cycle")
    matching = Matching(pairs=tuple(sorted(zip(lowers, uppers))), weight=sum(uppers))
    return matching, list(picks)


def analytic_lower_ratio(n: int) -> Fraction:
    """Exact lower bound on the pot fraction won by the p_max=5 variant:
    (1724/3375 n^2 - 29188/3375 n - 15944/3375) / (n^2 + n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    numerator = Fraction(1724 * n * n - 29188 * n - 15944, 3375)
    return numerator / (n * n + n)


def pot_fraction(play: OrderedPlay, n: int) -> float:
    """Player score divided by the pot total n(n+1)/2."""
    return 2 * play.score / (n * (n + 1))
