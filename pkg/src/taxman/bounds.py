"""Matching-based bounds on the optimal score.

The upper bound is the unrestricted maximum weight matching on the cover
graph (computed exactly via the blossom algorithm, which handles general
graphs).  The lower bound starts from that matching, orients the graph,
breaks all directed cycles with a greedy feedback-arc-set heuristic by
dropping matched edges, and orders the surviving matching into a witness
game.  Also hosts the reduction packing an arbitrary bipartite graph into
a two-ranked taxman instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import networkx as nx

from taxman.cover_graph import (
    CoverGraph,
    Matching,
    build_divisor_cover_graph,
    find_flat_alternating_cycle,
    make_matching,
)
from taxman.errors import NotBipartite
from taxman.game_core import GradedPosetInstance, MoveSequence
from taxman.matching_bridge import order_matching_standard
from taxman.number_theory import build_spf


@dataclass(frozen=True)
class BoundsReport:
    """Lower/upper bounds for one pot size, plus the exact optimum when known."""

    n: int
    lower: int
    upper: int
    optimal: int | None = None


@dataclass(frozen=True)
class OrientedGraph:
    """Cover graph oriented against a matching: unmatched edges point from
    lower to upper rank, matched edges point back down."""

    vertices: tuple
    arcs: tuple[tuple, ...]
    matched_arcs: frozenset


def max_weight_matching_edges(
    edges: Iterable[tuple[Hashable, Hashable, float]]
) -> tuple[float, set[tuple]]:
    """Maximum weight matching of an arbitrary weighted edge list.

    Returns (total weight, set of matched (u, v) pairs as given).  Backed by
    the blossom algorithm, exact for integer weights.
    """
    graph = nx.Graph()
    weights = {}
    for u, v, w in edges:
        graph.add_edge(u, v, weight=w)
        weights[(u, v)] = w
        weights[(v, u)] = w
    mate = nx.max_weight_matching(graph, maxcardinality=False, weight="weight")
    pairs = {(u, v) if (u, v) in weights else (v, u) for u, v in mate}
    return sum(weights[p] for p in pairs), pairs


def max_weight_matching(g: CoverGraph) -> Matching:
    """Unrestricted maximum weight matching on a cover graph."""
    if not g.edges:
        return Matching(pairs=(), weight=0)
    _weight, pairs = max_weight_matching_edges((lo, up, w) for lo, up, w in g.edges)
    normalized = {pair if g.edge_id(*pair) is not None else pair[::-1] for pair in pairs}
    return make_matching(g, normalized)


def upper_bound(n: int) -> int:
    """Maximum weight matching value of the divisor cover graph; the optimal
    game score can never exceed it."""
    return max_weight_matching(build_divisor_cover_graph(n)).weight


def orient(g: CoverGraph, m: Matching) -> OrientedGraph:
    matched = set(m.pairs)
    arcs = []
    matched_arcs = set()
    for lo, up, _w in g.edges:
        if (lo, up) in matched:
            arcs.append((up, lo))
            matched_arcs.add((up, lo))
        else:
            arcs.append((lo, up))
    return OrientedGraph(
        vertices=tuple(g.ranks), arcs=tuple(arcs), matched_arcs=frozenset(matched_arcs)
    )


def greedy_fas_order(og: OrientedGraph) -> list:
    """Vertex order from the greedy removal heuristic: strip sinks to the
    back, sources to the front, otherwise take the vertex maximizing
    out-degree minus in-degree (ties to the smallest label)."""
    outs: dict = {v: set() for v in og.vertices}
    ins: dict = {v: set() for v in og.vertices}
    for u, v in og.arcs:
        outs[u].add(v)
        ins[v].add(u)
    remaining = set(og.vertices)
    front: list = []
    back: list = []

    def remove(v):
        remaining.discard(v)
        for u in outs[v]:
            ins[u].discard(v)
        for u in ins[v]:
            outs[u].discard(v)

    while remaining:
        sinks = sorted(v for v in remaining if not outs[v])
        if sinks:
            remove(sinks[0])
            back.append(sinks[0])
            continue
        sources = sorted(v for v in remaining if not ins[v])
        if sources:
            remove(sources[0])
            front.append(sources[0])
            continue
        pick = max(remaining, key=lambda v: (len(outs[v]) - len(ins[v]), -v))
        remove(pick)
        front.append(pick)
    back.reverse()
    return front + back


def feedback_arcs(og: OrientedGraph, order: Sequence) -> set[tuple]:
    """Arcs pointing backward in the order; removing them leaves a DAG."""
    pos = {v: i for i, v in enumerate(order)}
    return {(u, v) for u, v in og.arcs if pos[u] > pos[v]}


def fas_lower_bound(n: int) -> tuple[int, MoveSequence]:
    """Achievable score: prune the maximum weight matching until no flat
    alternating cycle survives, then order it into a witness game.

    Matched edges whose downward arcs land in the greedy feedback arc set
    are dropped first; any cycle that survives (possible since the heuristic
    may pick unmatched arcs) loses its lightest matched edge until the
    orientation is acyclic.
    """
    spf = build_spf(n)
    g = build_divisor_cover_graph(n, spf)
    pairs = set(max_weight_matching(g).pairs)
    if pairs:
        og = orient(g, make_matching(g, pairs))
        dropped = feedback_arcs(og, greedy_fas_order(og))
        pairs = {(lo, up) for lo, up in pairs if (up, lo) not in dropped}
    while True:
        m = make_matching(g, pairs)
        cycle = find_flat_alternating_cycle(g, m)
        if cycle is None:
            break
        on_cycle = []
        for i, a in enumerate(cycle):
            b = cycle[(i + 1) % len(cycle)]
            if (b, a) in pairs:
                on_cycle.append((b, a))
        pairs.discard(min(on_cycle, key=lambda pr: (pr[1], pr[0])))
    seq = order_matching_standard(m, g, spf)
    return m.weight, seq


def bounds_report(n: int, with_oracle: bool = False) -> BoundsReport:
    """Aggregate lower/upper bounds and, when requested, the exact optimum."""
    lower, _seq = fas_lower_bound(n)
    upper = upper_bound(n)
    optimal = None
    if with_oracle:
        from taxman.oracle import optimal_score

        optimal, _witness = optimal_score(n)
    return BoundsReport(n=n, lower=lower, upper=upper, optimal=optimal)


def bipartite_to_taxman(
    a_vertices: Iterable[Hashable],
    b_vertices: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
) -> GradedPosetInstance:
    """Pack a bipartite graph into a two-ranked unit-weight taxman instance.

    Every edge (a, b) from the A side to the B side becomes the relation
    b < a, with rank 0 on B and rank 1 on A; the instance's cover graph is
    exactly the input graph.
    """
    a_list = list(a_vertices)
    b_list = list(b_vertices)
    a_set, b_set = set(a_list), set(b_list)
    if len(a_set) != len(a_list) or len(b_set) != len(b_list):
        raise NotBipartite("duplicate vertices in a half")
    if a_set & b_set:
        raise NotBipartite("the two halves must be disjoint")
    seen = set()
    relation = []
    for a, b in edges:
        if a not in a_set or b not in b_set:
            raise NotBipartite(f"edge ({a!r}, {b!r}) does not go from A to B")
        if (a, b) in seen:
            raise NotBipartite(f"duplicate edge ({a!r}, {b!r})")
        seen.add((a, b))
        relation.append((b, a))
    rank = {**{b: 0 for b in b_list}, **{a: 1 for a in a_list}}
    return GradedPosetInstance.from_relation(
        b_list + a_list, relation, rank=rank, weight=None
    )
