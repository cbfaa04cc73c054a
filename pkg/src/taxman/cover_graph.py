"""Cover graphs of graded posets and matchings on them.

The graph has the poset elements as vertices and one edge per cover pair,
weighted by the upper element's weight.  Legal play corresponds to
matchings on this graph that contain no flat alternating cycle, which here
is detected by orienting unmatched edges upward and matched edges downward
and looking for a directed cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from taxman.errors import InvalidPoset, NotAMatching
from taxman.game_core import GradedPosetInstance
from taxman.number_theory import SpfTable, build_spf, ranks_up_to

Element = Hashable
Edge = tuple  # (lower, upper, weight)


@dataclass(frozen=True)
class CoverGraph:
    """Weighted cover-relation graph.

    ``ranks`` maps vertex -> rank; ``edges`` holds (lower, upper, weight)
    with rank(upper) = rank(lower) + 1 and weight = weight(upper);
    ``adjacency`` maps vertex -> tuple of incident edge indices.
    ``pot_n`` is set for divisor graphs built over the pot {1..n}.
    """

    ranks: dict
    edges: tuple[Edge, ...]
    adjacency: dict = field(repr=False)
    pot_n: int | None = None
    _edge_ids: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._edge_ids is None:
            object.__setattr__(
                self, "_edge_ids", {(lo, up): i for i, (lo, up, _w) in enumerate(self.edges)}
            )

    def edge_id(self, lower, upper) -> int | None:
        return self._edge_ids.get((lower, upper))

    @property
    def vertices(self) -> list:
        return list(self.ranks)


@dataclass(frozen=True)
class Matching:
    """Endpoint-disjoint set of cover edges; pairs are (lower, upper)."""

    pairs: tuple[tuple, ...]
    weight: float | int

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def uppers(self) -> list:
        return [up for _lo, up in self.pairs]

    @property
    def lowers(self) -> list:
        return [lo for lo, _up in self.pairs]


def build_divisor_cover_graph(n: int, spf: SpfTable | None = None) -> CoverGraph:
    """Cover graph of the divisibility poset on {1..n}: one edge (x, p*x)
    per prime p with p*x <= n, weighted p*x."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if spf is None or spf.n_max < n:
        spf = build_spf(n)
    rank_table = ranks_up_to(spf)
    ranks = {k: rank_table[k] for k in range(1, n + 1)}
    spf_arr = spf.spf
    edges = []
    adjacency: dict = {k: [] for k in range(1, n + 1)}
    for p in range(2, n + 1):
        if spf_arr[p] != p:
            continue
        for x in range(1, n // p + 1):
            px = p * x
            eid = len(edges)
            edges.append((x, px, px))
            adjacency[x].append(eid)
            adjacency[px].append(eid)
    return CoverGraph(
        ranks=ranks,
        edges=tuple(edges),
        adjacency={v: tuple(a) for v, a in adjacency.items()},
        pot_n=n,
    )


def build_poset_cover_graph(inst: GradedPosetInstance) -> CoverGraph:
    """Cover graph of an explicit graded poset; raises InvalidPoset if the
    rank function does not step by 1 across some cover pair."""
    ranks = {e: inst.rank_of(e) for e in inst.elements}
    edges = []
    adjacency: dict = {e: [] for e in inst.elements}
    for q, p in inst.cover_pairs():
        if ranks[q] + 1 != ranks[p]:
            raise InvalidPoset(f"cover {q!r} below {p!r} must step rank by exactly 1")
        eid = len(edges)
        edges.append((q, p, inst.weight_of(p)))
        adjacency[q].append(eid)
        adjacency[p].append(eid)
    return CoverGraph(
        ranks=ranks,
        edges=tuple(edges),
        adjacency={v: tuple(a) for v, a in adjacency.items()},
    )


def make_matching(g: CoverGraph, pairs: Iterable[tuple]) -> Matching:
    """Validate pairs as a matching on g and attach the edge-weight sum.

    Pairs may be given in either orientation; they are normalized to
    (lower, upper).
    """
    normalized = []
    weight = 0
    seen: set = set()
    for a, b in pairs:
        eid = g.edge_id(a, b)
        if eid is None:
            eid = g.edge_id(b, a)
            if eid is None:
                raise NotAMatching(f"({a!r}, {b!r}) is not an edge of the cover graph")
        lo, up, w = g.edges[eid]
        for v in (lo, up):
            if v in seen:
                raise NotAMatching(f"vertex {v!r} used by two matched edges")
            seen.add(v)
        normalized.append((lo, up))
        weight += w
    normalized.sort(key=_pair_key)
    return Matching(pairs=tuple(normalized), weight=weight)


def _pair_key(pair):
    lo, up = pair
    try:
        return (0, lo, up)
    except TypeError:  # pragma: no cover - defensive
        return (1, repr(lo), repr(up))


def matching_weight(m: Matching):
    """Sum of matched edge weights (stored exactly at construction)."""
    return m.weight


def find_flat_alternating_cycle(g: CoverGraph, m: Matching) -> list | None:
    """Return a flat alternating cycle as a vertex list, or None.

    Orients every unmatched cover edge from lower to upper rank and every
    matched edge downward; any directed cycle then alternates matched and
    unmatched edges within two adjacent ranks, so plain cycle detection
    decides existence.
    """
    matched = set(m.pairs)
    if len({v for pair in matched for v in pair}) != 2 * len(matched):
        raise NotAMatching("matched edges share endpoints")
    out: dict = {v: [] for v in g.ranks}
    for lo, up, _w in g.edges:
        if (lo, up) in matched:
            out[up].append(lo)
        else:
            out[lo].append(up)
    for pair in matched:
        if g.edge_id(*pair) is None:
            raise NotAMatching(f"{pair!r} is not an edge of the cover graph")

    WHITE, GRAY, BLACK = 0, 1, 2
    color = dict.fromkeys(g.ranks, WHITE)
    for start in g.ranks:
        if color[start] != WHITE:
            continue
        color[start] = GRAY
        path = [start]
        stack = [iter(out[start])]
        while stack:
            advanced = False
            for w in stack[-1]:
                if color[w] == WHITE:
                    color[w] = GRAY
                    path.append(w)
                    stack.append(iter(out[w]))
                    advanced = True
                    break
                if color[w] == GRAY:
                    return path[path.index(w):]
            if not advanced:
                color[path.pop()] = BLACK
                stack.pop()
    return None


def export_edge_list(g: CoverGraph) -> str:
    """One edge per line, 'lower upper weight', for external tooling."""
    return "\n".join(f"{lo} {up} {w}" for lo, up, w in g.edges)
