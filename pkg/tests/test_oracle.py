import os

import pytest

from taxman.bounds import bipartite_to_taxman
from taxman.cover_graph import build_divisor_cover_graph
from taxman.errors import InstanceTooLarge, OracleInfeasible
from taxman.game_core import GradedPosetInstance, play_sequence
from taxman.matching_bridge import sequence_score
from taxman.oracle import (
    cache_path,
    max_fcfree_matching_bruteforce,
    optimal_continuation,
    optimal_score,
    optimal_score_general,
)


def best_by_full_enumeration(n):
    """Independent baseline: recursively try every legal pick on plain sets."""

    def rec(in_play):
        best = 0
        for p in sorted(in_play):
            taxed = {d for d in in_play if d != p and p % d == 0}
            if not taxed:
                continue
            best = max(best, p + rec(in_play - taxed - {p}))
        return best

    return rec(frozenset(range(1, n + 1)))


class TestOptimalScore:
    def test_trivial(self):
        score, seq = optimal_score(1)
        assert score == 0 and seq.picks == []

    def test_n4(self):
        score, seq = optimal_score(4)
        assert score == 7
        assert seq.picks == [3, 4]

    def test_matches_full_enumeration(self):
        for n in range(1, 10):
            assert optimal_score(n, use_cache=False)[0] == best_by_full_enumeration(n)

    def test_witness_replays_to_score(self):
        for n in (6, 11, 16, 20):
            score, seq = optimal_score(n, use_cache=False)
            state = play_sequence(n, seq.picks)
            assert state.player_score == score

    def test_n13_at_least_52(self):
        score, _seq = optimal_score(13)
        assert score >= 52

    def test_infeasible_above_cap(self):
        with pytest.raises(OracleInfeasible):
            optimal_score(21, cap=20)

    def test_dominates_heuristic_plays(self):
        from taxman.born_free import BornFreeConfig, born_free_play

        for n in range(2, 19):
            score, _ = optimal_score(n)
            assert score >= born_free_play(BornFreeConfig(n)).score


class TestCache:
    def test_roundtrip_via_env(self, tmp_path, monkeypatch):
        path = tmp_path / "cache.txt"
        monkeypatch.setenv("TAXMAN_ORACLE_CACHE", str(path))
        assert cache_path() == path
        score, seq = optimal_score(12)
        assert path.exists()
        line = path.read_text().splitlines()[0]
        assert line.startswith("12 ")
        # second call is served from the cache and agrees
        again, seq2 = optimal_score(12)
        assert again == score and seq2.picks == seq.picks
        assert len(path.read_text().splitlines()) == 1

    def test_corrupt_lines_skipped(self, tmp_path, monkeypatch):
        path = tmp_path / "cache.txt"
        path.write_text("garbage line\n9 not-a-number\n")
        monkeypatch.setenv("TAXMAN_ORACLE_CACHE", str(path))
        # the unparseable entry for 9 falls back to recomputation
        score, _ = optimal_score(9)
        assert score == best_by_full_enumeration(9)


class TestOptimalGeneral:
    def test_antichain(self):
        inst = GradedPosetInstance.from_relation(["x", "y"], [], rank=lambda e: 0)
        score, seq = optimal_score_general(inst)
        assert score == 0 and list(seq) == []

    def test_chain_scores_one(self):
        inst = GradedPosetInstance.from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        score, seq = optimal_score_general(inst)
        assert score == 1
        state = play_sequence(inst, [m.pick for m in seq])
        assert state.player_score == 1

    def test_four_cycle_scores_one(self):
        inst = bipartite_to_taxman(
            ["a1", "a2"], ["b1", "b2"],
            [("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2")],
        )
        score, _seq = optimal_score_general(inst)
        assert score == 1

    def test_infeasible_above_cap(self):
        inst = GradedPosetInstance.from_relation(list(range(17)), [], rank=lambda e: 0)
        with pytest.raises(OracleInfeasible):
            optimal_score_general(inst)

    def test_weighted_instance(self):
        inst = GradedPosetInstance.from_relation(
            ["lo", "hi1", "hi2"],
            [("lo", "hi1"), ("lo", "hi2")],
            rank={"lo": 0, "hi1": 1, "hi2": 1},
            weight={"lo": 1, "hi1": 5, "hi2": 9},
        )
        score, seq = optimal_score_general(inst)
        assert score == 9 and [m.pick for m in seq] == ["hi2"]


class TestContinuation:
    def test_fresh_equals_optimal(self):
        for n in (5, 12, 16):
            score, _ = optimal_score(n, use_cache=False)
            gain, picks = optimal_continuation(n, range(1, n + 1))
            assert gain == score
            assert play_sequence(n, picks).player_score == score

    def test_midgame(self):
        gain, picks = optimal_continuation(4, {2, 3, 4})
        # only 4 can be picked (taxing 2); 3 is stranded
        assert gain == 4 and picks == [4]

    def test_dead_position(self):
        gain, picks = optimal_continuation(4, {3, 4})
        assert gain == 0 and picks == []


class TestBruteForceMatching:
    def test_examples(self):
        g4 = build_divisor_cover_graph(4)
        m = max_fcfree_matching_bruteforce(g4)
        assert m.weight == 7 and set(m.pairs) == {(1, 3), (2, 4)}
        g1 = build_divisor_cover_graph(1)
        assert max_fcfree_matching_bruteforce(g1).pairs == ()

    def test_equals_oracle_small(self):
        for n in range(1, 13):
            g = build_divisor_cover_graph(n)
            assert max_fcfree_matching_bruteforce(g).weight == optimal_score(n, use_cache=False)[0]

    def test_cap(self):
        g = build_divisor_cover_graph(40)
        with pytest.raises(InstanceTooLarge):
            max_fcfree_matching_bruteforce(g)
