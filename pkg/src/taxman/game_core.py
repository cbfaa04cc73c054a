"""Executable rules of the Taxman game.

Covers the standard game on the pot {1..N} (divisibility order, identity
weights) and the generalized game on an explicit finite graded poset.
States are immutable; applying a pick returns a new state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import isqrt
from typing import Callable, Hashable, Iterable, Mapping

from taxman.errors import GameNotOver, IllegalPick, IllegalSequence, InvalidPoset

Element = Hashable


@dataclass(frozen=True)
class Move:
    """One player pick together with the numbers the taxman removed for it."""

    pick: Element
    taxed: tuple

    def __post_init__(self):
        if not self.taxed:
            raise ValueError("a move must tax at least one element")


@dataclass(frozen=True)
class MoveSequence:
    moves: tuple[Move, ...] = ()

    @property
    def picks(self) -> list:
        return [m.pick for m in self.moves]

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


class GradedPosetInstance:
    """Finite strict partial order with a rank function and element weights.

    The strict order is stored as per-element bitmasks over the element
    indices; construction validates the order axioms (irreflexive,
    asymmetric, transitive) and the grading axioms (rank strictly increases
    along <, and steps by exactly 1 across cover pairs).
    """

    __slots__ = ("elements", "ranks", "weights", "below_masks", "_index", "_above_masks")

    def __init__(self, elements, ranks, weights, below_masks):
        self.elements = tuple(elements)
        self.ranks = tuple(ranks)
        self.weights = tuple(weights)
        self.below_masks = tuple(below_masks)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InvalidPoset("duplicate elements")
        n = len(self.elements)
        above = [0] * n
        for p in range(n):
            m = self.below_masks[p]
            while m:
                low = m & -m
                above[low.bit_length() - 1] |= 1 << p
                m ^= low
        self._above_masks = tuple(above)
        self._validate()

    @classmethod
    def from_relation(
        cls,
        elements: Iterable[Element],
        less_than: Iterable[tuple[Element, Element]],
        rank: Mapping[Element, int] | Callable[[Element], int],
        weight: Mapping[Element, float] | Callable[[Element], float] | None = None,
    ) -> "GradedPosetInstance":
        """Build from the full strict relation given as (q, p) pairs with q < p."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        below = [0] * len(elements)
        for q, p in less_than:
            if q not in index or p not in index:
                raise InvalidPoset(f"relation pair ({q!r}, {p!r}) outside element set")
            below[index[p]] |= 1 << index[q]
        ranks = [_lookup(rank, e) for e in elements]
        weights = [1 if weight is None else _lookup(weight, e) for e in elements]
        return cls(elements, ranks, weights, below)

    @classmethod
    def from_covers(
        cls,
        elements: Iterable[Element],
        covers: Iterable[tuple[Element, Element]],
        rank: Mapping[Element, int] | Callable[[Element], int] | None = None,
        weight: Mapping[Element, float] | Callable[[Element], float] | None = None,
    ) -> "GradedPosetInstance":
        """Build from cover pairs (q, p) meaning q is covered by p; the strict
        order is the transitive closure, and the rank defaults to the longest
        chain length below each element."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        below = [0] * n
        cover_below = [[] for _ in range(n)]
        for q, p in covers:
            if q not in index or p not in index:
                raise InvalidPoset(f"cover pair ({q!r}, {p!r}) outside element set")
            cover_below[index[p]].append(index[q])
        # transitive closure by iterating to a fixed point
        for p in range(n):
            for q in cover_below[p]:
                below[p] |= 1 << q
        changed = True
        while changed:
            changed = False
            for p in range(n):
                m = below[p]
                acc = m
                while m:
                    low = m & -m
                    acc |= below[low.bit_length() - 1]
                    m ^= low
                if acc != below[p]:
                    below[p] = acc
                    changed = True
        if rank is None:
            ranks = [None] * n
            def chain_rank(i: int) -> int:
                if ranks[i] is None:
                    ranks[i] = 1 + max((chain_rank(q) for q in cover_below[i]), default=-1)
                return ranks[i]
            for i in range(n):
                chain_rank(i)
        else:
            ranks = [_lookup(rank, e) for e in elements]
        weights = [1 if weight is None else _lookup(weight, e) for e in elements]
        return cls(elements, ranks, weights, below)

    def _validate(self) -> None:
        n = len(self.elements)
        for p in range(n):
            m = self.below_masks[p]
            if m >> n:
                raise InvalidPoset("relation mask references unknown elements")
            if m & (1 << p):
                raise InvalidPoset(f"irreflexivity violated at {self.elements[p]!r}")
            mm = m
            while mm:
                low = mm & -mm
                q = low.bit_length() - 1
                mm ^= low
                if self.below_masks[q] & (1 << p):
                    raise InvalidPoset(
                        f"asymmetry violated between {self.elements[q]!r} and {self.elements[p]!r}"
                    )
                if self.below_masks[q] & ~m:
                    raise InvalidPoset(
                        f"transitivity violated below {self.elements[p]!r}"
                    )
                if self.ranks[q] >= self.ranks[p]:
                    raise InvalidPoset(
                        f"rank must strictly increase: {self.elements[q]!r} < {self.elements[p]!r}"
                    )
        for q, p in self.cover_pairs():
            qi, pi = self._index[q], self._index[p]
            if self.ranks[qi] + 1 != self.ranks[pi]:
                raise InvalidPoset(
                    f"cover {q!r} below {p!r} must step rank by exactly 1"
                )

    # --- queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, e: Element) -> int:
        return self._index[e]

    def rank_of(self, e: Element) -> int:
        return self.ranks[self._index[e]]

    def weight_of(self, e: Element):
        return self.weights[self._index[e]]

    def total_weight(self):
        return sum(self.weights)

    def is_less(self, q: Element, p: Element) -> bool:
        return bool(self.below_masks[self._index[p]] & (1 << self._index[q]))

    def strictly_below(self, p: Element) -> list:
        return self._mask_elements(self.below_masks[self._index[p]])

    def is_cover(self, q: Element, p: Element) -> bool:
        qi, pi = self._index[q], self._index[p]
        if not self.below_masks[pi] & (1 << qi):
            return False
        return not (self.below_masks[pi] & self._above_masks[qi])

    def cover_pairs(self) -> list[tuple[Element, Element]]:
        out = []
        for pi, p in enumerate(self.elements):
            m = self.below_masks[pi]
            while m:
                low = m & -m
                qi = low.bit_length() - 1
                m ^= low
                if not (self.below_masks[pi] & self._above_masks[qi]):
                    out.append((self.elements[qi], p))
        return out

    def _mask_elements(self, mask: int) -> list:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.elements[low.bit_length() - 1])
            mask ^= low
        return out


def _lookup(table, e):
    return table(e) if callable(table) else table[e]


def divisibility_poset(n: int) -> GradedPosetInstance:
    """The standard game's poset: {1..n}, proper divisibility, identity weights."""
    pairs = []
    for d in range(1, n + 1):
        pairs.extend((d, m) for m in range(2 * d, n + 1, d))
    rank = [0] * (n + 1)
    for k in range(2, n + 1):
        d = 2
        v = k
        while d * d <= v:
            if v % d == 0:
                break
            d += 1
        else:
            d = v
        rank[k] = rank[k // d] + 1
    return GradedPosetInstance.from_relation(
        range(1, n + 1), pairs, rank=lambda e: rank[e], weight=lambda e: e
    )


# --- game states ----------------------------------------------------------


@dataclass(frozen=True)
class GameState:
    """Live game: remaining pot, both scores, and the move history."""

    in_play: frozenset
    player_score: float | int
    taxman_score: float | int
    history: MoveSequence
    finalized: bool
    n: int | None = None
    poset: GradedPosetInstance | None = field(default=None, compare=False)

    @property
    def is_standard(self) -> bool:
        return self.n is not None

    def weight_of(self, e: Element):
        return e if self.is_standard else self.poset.weight_of(e)

    def pot_total(self):
        if self.is_standard:
            return self.n * (self.n + 1) // 2
        return self.poset.total_weight()

    def outcome(self) -> str | None:
        """'win' / 'tie' / 'loss' from the player's side; None while unfinished."""
        if not self.finalized:
            return None
        if self.player_score > self.taxman_score:
            return "win"
        if self.player_score == self.taxman_score:
            return "tie"
        return "loss"


def new_standard_game(n: int) -> GameState:
    if n < 1:
        raise ValueError("pot size must be >= 1")
    return GameState(
        in_play=frozenset(range(1, n + 1)),
        player_score=0,
        taxman_score=0,
        history=MoveSequence(),
        finalized=False,
        n=n,
    )


def new_poset_game(inst: GradedPosetInstance) -> GameState:
    return GameState(
        in_play=frozenset(inst.elements),
        player_score=0,
        taxman_score=0,
        history=MoveSequence(),
        finalized=False,
        poset=inst,
    )


def _in_play_divisors(state: GameState, p: int) -> list[int]:
    """In-play proper divisors of p, found by stepping d <= sqrt(p)."""
    in_play = state.in_play
    out = []
    for d in range(1, isqrt(p) + 1):
        if p % d == 0:
            if d != p and d in in_play:
                out.append(d)
            q = p // d
            if q != p and q != d and q in in_play:
                out.append(q)
    return out


def legal_picks(state: GameState) -> set:
    """Every in-play element with at least one strictly smaller in-play element."""
    if state.finalized or not state.in_play:
        return set()
    if state.is_standard:
        n = state.n
        has_lower = bytearray(n + 1)
        for d in state.in_play:
            for m in range(2 * d, n + 1, d):
                has_lower[m] = 1
        return {p for p in state.in_play if has_lower[p]}
    inst = state.poset
    mask = 0
    for e in state.in_play:
        mask |= 1 << inst.index_of(e)
    return {e for e in state.in_play if inst.below_masks[inst.index_of(e)] & mask}


def apply_pick(state: GameState, pick: Element) -> GameState:
    """Score the pick for the player, hand everything below it to the taxman."""
    if state.finalized:
        raise IllegalPick(pick, "not-in-play")
    if pick not in state.in_play:
        raise IllegalPick(pick, "not-in-play")
    if state.is_standard:
        taxed = sorted(_in_play_divisors(state, pick))
    else:
        inst = state.poset
        taxed = sorted(
            (e for e in inst.strictly_below(pick) if e in state.in_play),
            key=inst.index_of,
        )
    if not taxed:
        raise IllegalPick(pick, "no-tax")
    move = Move(pick=pick, taxed=tuple(taxed))
    return replace(
        state,
        in_play=state.in_play - set(taxed) - {pick},
        player_score=state.player_score + state.weight_of(pick),
        taxman_score=state.taxman_score + sum(state.weight_of(e) for e in taxed),
        history=MoveSequence(state.history.moves + (move,)),
    )


def sweep_remainder(state: GameState) -> GameState:
    """Unconditionally hand the remaining pot to the taxman and close the game."""
    if state.finalized:
        return state
    leftover = sum(state.weight_of(e) for e in state.in_play)
    return replace(
        state,
        in_play=frozenset(),
        taxman_score=state.taxman_score + leftover,
        finalized=True,
    )


def finalize(state: GameState) -> GameState:
    """Close a finished game; raises GameNotOver while legal picks remain."""
    if legal_picks(state):
        raise GameNotOver("legal picks remain")
    return sweep_remainder(state)


def play_sequence(pot: int | GradedPosetInstance, picks: Iterable[Element]) -> GameState:
    """Replay a whole game: apply every pick in order, then finalize.

    Raises IllegalPick with the 0-based index of the first illegal move.
    """
    state = new_standard_game(pot) if isinstance(pot, int) else new_poset_game(pot)
    for i, pick in enumerate(picks):
        try:
            state = apply_pick(state, pick)
        except IllegalPick as exc:
            raise IllegalPick(exc.pick, exc.reason, index=i) from None
    return finalize(state)


# --- serialization --------------------------------------------------------


def state_to_json(state: GameState) -> dict:
    """JSON-compatible snapshot: pot size, picks so far, both scores."""
    if not state.is_standard:
        raise ValueError("only standard games serialize to the replay format")
    return {
        "n": state.n,
        "picks": [int(m.pick) for m in state.history],
        "player_score": int(state.player_score),
        "taxman_score": int(state.taxman_score),
    }


def replay_from_json(doc: dict) -> GameState:
    """Replay a serialized game, sweeping leftovers to the taxman at the end.

    Validates the document shape and, when scores are present, that they
    match the replayed totals.
    """
    try:
        n = doc["n"]
        picks = doc["picks"]
    except (TypeError, KeyError) as exc:
        raise IllegalSequence(f"replay document missing field: {exc}") from None
    if not isinstance(n, int) or n < 1:
        raise IllegalSequence(f"bad pot size: {n!r}")
    if not isinstance(picks, list) or not all(isinstance(p, int) for p in picks):
        raise IllegalSequence("picks must be a list of integers")
    state = new_standard_game(n)
    for i, pick in enumerate(picks):
        try:
            state = apply_pick(state, pick)
        except IllegalPick as exc:
            raise IllegalPick(exc.pick, exc.reason, index=i) from None
    state = sweep_remainder(state)
    for key, got in (("player_score", state.player_score), ("taxman_score", state.taxman_score)):
        if key in doc and doc[key] != got:
            raise IllegalSequence(f"{key} mismatch: file says {doc[key]}, replay gives {got}")
    return state
