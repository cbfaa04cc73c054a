"""Conversions between legal move sequences and flat-alternating-cycle-free
matchings on the cover graph, in both directions.

A legal sequence maps to a matching by pairing each pick with the largest
number it taxed.  A cycle-free matching maps back to a legal sequence by
playing rank levels bottom-up, always picking an upper whose only remaining
matched conflict is its own partner.  Both directions preserve the score.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable

from taxman import _core
from taxman.cover_graph import CoverGraph, Matching, make_matching
from taxman.errors import FlatCycleDetected, IllegalSequence, NotAMatching
from taxman.game_core import (
    GradedPosetInstance,
    Move,
    MoveSequence,
    apply_pick,
    new_poset_game,
)
from taxman.number_theory import SpfTable, build_spf, divisors_of


def replay_standard(n: int, picks: Iterable[int], spf: SpfTable | None = None) -> MoveSequence:
    """Replay picks over the full pot {1..n} using sieve-backed divisor
    enumeration in O(N log N) total."""
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    in_play = bytearray(n + 1)
    for k in range(1, n + 1):
        in_play[k] = 1
    moves = []
    for i, pick in enumerate(picks):
        if not 1 <= pick <= n or not in_play[pick]:
            raise IllegalSequence(f"pick {pick} at index {i} is not in play")
        taxed = sorted(d for d in divisors_of(pick, spf) if d != pick and in_play[d])
        if not taxed:
            raise IllegalSequence(f"pick {pick} at index {i} yields no tax")
        in_play[pick] = 0
        for d in taxed:
            in_play[d] = 0
        moves.append(Move(pick=pick, taxed=tuple(taxed)))
    return MoveSequence(tuple(moves))


def sequence_score(seq: MoveSequence):
    return sum(m.pick for m in seq.moves)


def _picks_of(seq) -> list:
    if isinstance(seq, MoveSequence):
        return seq.picks
    return list(seq)


def sequence_to_matching(
    seq: MoveSequence | Iterable[int], g: CoverGraph, spf: SpfTable | None = None
) -> Matching:
    """Pair every pick with the largest number taxed by it.

    The pairs are always cover edges and never share endpoints, and the
    matching weight equals the player score of the sequence.
    """
    if g.pot_n is None:
        raise ValueError("sequence_to_matching expects a divisor cover graph")
    replayed = replay_standard(g.pot_n, _picks_of(seq), spf)
    pairs = [(max(m.taxed), m.pick) for m in replayed.moves]
    return make_matching(g, pairs)


def order_matching_standard(
    m: Matching, g: CoverGraph, spf: SpfTable | None = None
) -> MoveSequence:
    """Order a cycle-free matching on the divisor cover graph into legal play.

    Runs in O(N log N): rank levels are processed in increasing order and
    within each level a FIFO queue of degree-1 uppers fixes the pick order.
    Raises FlatCycleDetected when the queue starves, which certifies a flat
    alternating cycle in the matching.
    """
    n = g.pot_n
    if n is None:
        raise ValueError("order_matching_standard expects a divisor cover graph")
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    _validate_standard_matching(m, n, spf)
    pairs = sorted(m.pairs)
    lowers = array("q", [lo for lo, _up in pairs])
    uppers = array("q", [up for _lo, up in pairs])
    picks, ok, failed_rank = _core.order_core(n, lowers, uppers, spf.spf)
    if not ok:
        raise FlatCycleDetected(
            f"matching has a flat alternating cycle between ranks {failed_rank - 1} and {failed_rank}"
        )
    seq = replay_standard(n, picks, spf)
    if sequence_score(seq) != m.weight:
        raise AssertionError("ordered sequence does not reproduce the matching weight")
    return seq


def _validate_standard_matching(m: Matching, n: int, spf: SpfTable) -> None:
    seen: set[int] = set()
    for lo, up in m.pairs:
        if not (1 <= lo <= n and 1 <= up <= n):
            raise NotAMatching(f"pair ({lo}, {up}) outside the pot 1..{n}")
        if up % lo != 0:
            raise NotAMatching(f"pair ({lo}, {up}) is not a divisor pair")
        q = up // lo
        if q < 2 or spf.spf[q] != q:
            raise NotAMatching(f"pair ({lo}, {up}) is not a cover pair")
        if lo in seen or up in seen:
            raise NotAMatching(f"pair ({lo}, {up}) shares an endpoint")
        seen.add(lo)
        seen.add(up)


def order_matching_general(m: Matching, inst: GradedPosetInstance) -> MoveSequence:
    """Order a cycle-free matching on an explicit poset into legal play.

    Repeatedly chases interference: starting from an arbitrary pair, move to
    any pair whose lower sits below the current upper; the chase terminates
    at a safely playable pair unless it revisits a pair, which certifies a
    flat alternating cycle.
    """
    pairs = list(m.pairs)
    used: set = set()
    for lo, up in pairs:
        if not inst.is_cover(lo, up):
            raise NotAMatching(f"({lo!r}, {up!r}) is not a cover pair of the poset")
        if lo in used or up in used:
            raise NotAMatching(f"pair ({lo!r}, {up!r}) shares an endpoint")
        used.update((lo, up))

    order = []
    remaining = list(range(len(pairs)))
    while remaining:
        current = remaining[0]
        visited = {current}
        while True:
            _lo, up = pairs[current]
            nxt = None
            for j in remaining:
                if j != current and inst.is_less(pairs[j][0], up):
                    nxt = j
                    break
            if nxt is None:
                break
            if nxt in visited:
                raise FlatCycleDetected(
                    "interference chase revisited a pair; the matching has a flat alternating cycle"
                )
            visited.add(nxt)
            current = nxt
        order.append(pairs[current][1])
        remaining.remove(current)

    state = new_poset_game(inst)
    for pick in order:
        state = apply_pick(state, pick)
    if state.player_score != m.weight:
        raise AssertionError("ordered sequence does not reproduce the matching weight")
    return state.history


def roundtrip_check(n: int, seq: MoveSequence | Iterable[int]) -> bool:
    """True iff sequence -> matching -> sequence preserves the pick set and score."""
    from taxman.cover_graph import build_divisor_cover_graph

    g = build_divisor_cover_graph(n)
    m = sequence_to_matching(seq, g)
    reordered = order_matching_standard(m, g)
    picks = _picks_of(seq)
    return set(reordered.picks) == set(picks) and sequence_score(reordered) == sum(picks)


@dataclass(frozen=True)
class OrderedPlay:
    """A matching together with a legal order realizing its weight as score."""

    sequence: MoveSequence
    matching: Matching
    score: float | int
