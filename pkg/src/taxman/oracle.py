"""Exhaustive exact solvers for small instances.

These are the ground truth the heuristics and bounds are checked against:
a memoized bitmask search over in-play sets for the game itself, and a
pruned subset enumeration for the maximum-weight cycle-free matching.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable

from taxman.cover_graph import CoverGraph, Matching
from taxman.errors import InstanceTooLarge, OracleInfeasible
from taxman.game_core import (
    GradedPosetInstance,
    MoveSequence,
    apply_pick,
    new_poset_game,
)
from taxman.matching_bridge import replay_standard

DEFAULT_CAP = 20
GENERAL_CAP = 16
BRUTE_FORCE_EDGE_CAP = 26

CACHE_ENV = "TAXMAN_ORACLE_CACHE"


def cache_path() -> Path:
    """Cache file location; override with the TAXMAN_ORACLE_CACHE variable."""
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "taxman" / "oracle_cache.txt"


def _load_cached(n: int) -> tuple[int, list[int]] | None:
    path = cache_path()
    if not path.exists():
        return None
    for line in path.read_text().splitlines():
        parts = line.split(maxsplit=2)
        if len(parts) < 2 or not parts[0].isdigit():
            continue
        if int(parts[0]) != n:
            continue
        try:
            score = int(parts[1])
            picks = [int(x) for x in parts[2].split(",")] if len(parts) == 3 and parts[2] else []
        except ValueError:
            continue  # corrupt entry; recompute
        return score, picks
    return None


def _store_cached(n: int, score: int, picks: list[int]) -> None:
    path = cache_path()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a") as fh:
            fh.write(f"{n} {score} {','.join(map(str, picks))}\n".rstrip(",\n ") + "\n")
    except OSError:
        pass  # the cache is best-effort only


def _mask_values_sum(mask: int) -> int:
    total = 0
    while mask:
        low = mask & -mask
        total += low.bit_length() - 1
        mask ^= low
    return total


class _StandardSearcher:
    """Memoized bitmask search over in-play sets of the pot {1..n}."""

    def __init__(self, n: int):
        self.n = n
        divmask = [0] * (n + 1)
        for d in range(1, n // 2 + 1):
            bit = 1 << d
            for mult in range(2 * d, n + 1, d):
                divmask[mult] |= bit
        self.divmask = divmask
        self.memo: dict[int, tuple[int, int]] = {}

    def best(self, mask: int, pot_left: int) -> int:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit[0]
        divmask = self.divmask
        candidates = []
        mm = mask
        while mm:
            low = mm & -mm
            k = low.bit_length() - 1
            mm ^= low
            taxed = divmask[k] & mask
            if taxed:
                # optimistic value: keep everything except this move's tax
                candidates.append((pot_left - _mask_values_sum(taxed), k, taxed))
        if not candidates:
            self.memo[mask] = (0, 0)
            return 0
        candidates.sort(reverse=True)
        best_value, best_pick = 0, 0
        for upper, k, taxed in candidates:
            if upper <= best_value:
                break
            value = k + self.best(mask ^ (1 << k) ^ taxed, upper - k)
            if value > best_value:
                best_value, best_pick = value, k
        self.memo[mask] = (best_value, best_pick)
        return best_value

    def extract_picks(self, mask: int) -> list[int]:
        picks: list[int] = []
        while True:
            _value, pick = self.memo[mask]
            if pick == 0:
                return picks
            picks.append(pick)
            mask = mask ^ (1 << pick) ^ (self.divmask[pick] & mask)


def optimal_score(n: int, cap: int = DEFAULT_CAP, use_cache: bool = True) -> tuple[int, MoveSequence]:
    """Exact optimal player score for the pot {1..n}, with a witness sequence.

    Depth-first search over in-play bitmasks, memoized per mask, pruning
    children whose score plus remaining pot cannot beat the incumbent.
    Results are cached on disk ('n score pick1,pick2,...' per line).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise OracleInfeasible(f"pot {n} above the exact-search cap {cap}")
    if use_cache:
        hit = _load_cached(n)
        if hit is not None:
            score, picks = hit
            seq = replay_standard(n, picks)
            if sum(picks) == score:
                return score, seq
    searcher = _StandardSearcher(n)
    full = (1 << (n + 1)) - 2
    score = searcher.best(full, n * (n + 1) // 2)
    picks = searcher.extract_picks(full)
    seq = replay_standard(n, picks)
    if use_cache:
        _store_cached(n, score, picks)
    return score, seq


def optimal_continuation(
    n: int, in_play: Iterable[int], cap: int = DEFAULT_CAP
) -> tuple[int, list[int]]:
    """Exact best additional score from an arbitrary in-play set, with the
    picks realizing it (empty when no legal pick exists)."""
    if n > cap:
        raise OracleInfeasible(f"pot {n} above the exact-search cap {cap}")
    mask = 0
    for k in in_play:
        if not 1 <= k <= n:
            raise ValueError(f"{k} outside the pot 1..{n}")
        mask |= 1 << k
    searcher = _StandardSearcher(n)
    score = searcher.best(mask, _mask_values_sum(mask))
    return score, searcher.extract_picks(mask)


def optimal_score_general(
    inst: GradedPosetInstance, cap: int = GENERAL_CAP
) -> tuple[float | int, MoveSequence]:
    """Exact optimum of the generalized game by search over in-play subsets."""
    k = len(inst)
    if k > cap:
        raise OracleInfeasible(f"{k} elements above the exact-search cap {cap}")
    below = inst.below_masks
    weights = inst.weights

    def mask_weight(mask: int):
        total = 0
        while mask:
            low = mask & -mask
            total += weights[low.bit_length() - 1]
            mask ^= low
        return total

    memo: dict[int, tuple] = {}

    def best(mask: int, pot_left):
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        candidates = []
        mm = mask
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            mm ^= low
            taxed = below[i] & mask
            if taxed:
                candidates.append((pot_left - mask_weight(taxed), i, taxed))
        if not candidates:
            memo[mask] = (0, -1)
            return 0
        candidates.sort(reverse=True)
        best_value, best_pick = 0, -1
        for upper, i, taxed in candidates:
            if upper <= best_value:
                break
            value = weights[i] + best(mask ^ (1 << i) ^ taxed, upper - weights[i])
            if value > best_value:
                best_value, best_pick = value, i
        memo[mask] = (best_value, best_pick)
        return best_value

    full = (1 << k) - 1
    score = best(full, inst.total_weight())

    state = new_poset_game(inst)
    mask = full
    while True:
        _value, pick = memo[mask]
        if pick < 0:
            break
        state = apply_pick(state, inst.elements[pick])
        mask = mask ^ (1 << pick) ^ (below[pick] & mask)
    return score, state.history


def max_fcfree_matching_bruteforce(
    g: CoverGraph, max_edges: int = BRUTE_FORCE_EDGE_CAP
) -> Matching:
    """Exact maximum-weight flat-alternating-cycle-free matching by pruned
    subset enumeration over the edge list."""
    if len(g.edges) > max_edges:
        raise InstanceTooLarge(f"{len(g.edges)} edges above enumeration cap {max_edges}")
    edges = sorted(g.edges, key=lambda e: (-e[2], e[0]))
    suffix = [0] * (len(edges) + 1)
    for i in range(len(edges) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + edges[i][2]

    best_pairs: list[tuple] = []
    best_weight = 0

    def search(i: int, used: set, pairs: list, weight):
        nonlocal best_pairs, best_weight
        if weight > best_weight:
            best_weight = weight
            best_pairs = list(pairs)
        if i == len(edges) or weight + suffix[i] <= best_weight:
            return
        lo, up, w = edges[i]
        if lo not in used and up not in used and not _arc_closes_cycle(g, pairs, lo, up):
            used.update((lo, up))
            pairs.append((lo, up))
            search(i + 1, used, pairs, weight + w)
            pairs.pop()
            used.difference_update((lo, up))
        search(i + 1, used, pairs, weight)

    search(0, set(), [], 0)
    try:
        ordered = tuple(sorted(best_pairs))
    except TypeError:
        ordered = tuple(sorted(best_pairs, key=repr))
    return Matching(pairs=ordered, weight=best_weight)


def _arc_closes_cycle(g: CoverGraph, pairs: list, lo, up) -> bool:
    """Would matching (lo, up) close a directed cycle in the orientation?

    Equivalent to lo reaching up through arcs oriented by the current pairs
    (matched edges point down, unmatched point up); only such a path can
    combine with the new downward arc up -> lo into a cycle.
    """
    matched = set(pairs)
    matched.add((lo, up))
    stack = [lo]
    seen = {lo}
    while stack:
        v = stack.pop()
        if v == up:
            return True
        for eid in g.adjacency[v]:
            el, eu, _w = g.edges[eid]
            if (el, eu) in matched:
                w = el if v == eu else None
            else:
                w = eu if v == el else None
            if w is not None and w not in seen:
                seen.add(w)
                stack.append(w)
    return False
