"""Command-line front door: play, sweep, bounds, replay, serve.

Exit codes for ``play``: 0 win, 2 tie, 3 loss; ``replay`` exits 3 on an
illegal sequence and 1 on unreadable input; other usage or I/O errors
exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence

from taxman import bounds as bounds_mod
from taxman import born_free as bf
from taxman import game_core as gc
from taxman import matching_bridge as mb
from taxman import oracle as oracle_mod
from taxman.cover_graph import build_divisor_cover_graph
from taxman.errors import IllegalPick, IllegalSequence, OracleInfeasible, TaxmanError

STRATEGIES = ("born-free", "born-free-5", "fas-lower", "oracle")


def _strategy_play(n: int, strategy: str, oracle_cap: int) -> tuple[list[int], int]:
    """Resolve a strategy name to (picks, expected score)."""
    if strategy == "born-free":
        play = bf.born_free_play(bf.BornFreeConfig(n))
        return play.sequence.picks, play.score
    if strategy == "born-free-5":
        play = bf.born_free_play(bf.BornFreeConfig(n, p_max=5))
        return play.sequence.picks, play.score
    if strategy == "fas-lower":
        score, seq = bounds_mod.fas_lower_bound(n)
        return seq.picks, score
    if strategy == "oracle":
        score, seq = oracle_mod.optimal_score(n, cap=oracle_cap)
        return seq.picks, score
    raise ValueError(f"unknown strategy {strategy!r}")


def cmd_play(args) -> int:
    try:
        picks, _score = _strategy_play(args.n, args.strategy, args.oracle_cap)
    except OracleInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    state = gc.new_standard_game(args.n)
    for pick in picks:
        state = gc.apply_pick(state, pick)
        taxed = state.history.moves[-1].taxed
        print(f"pick {pick}  tax: {','.join(map(str, taxed))}")
    swept = sorted(state.in_play)
    state = gc.finalize(state)
    if swept:
        print(f"swept: {','.join(map(str, swept))}")
    print(f"player {state.player_score}  taxman {state.taxman_score}  (pot {state.pot_total()})")
    outcome = state.outcome()
    print(outcome.upper())
    return {"win": 0, "tie": 2, "loss": 3}[outcome]


def _csv_out(rows: Iterable[str], out: str | None) -> int:
    text = "\n".join(rows) + "\n"
    if out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    rows = ["N,p(N)"]
    try:
        for n in range(args.n_min, args.n_max + 1, args.step):
            picks, score = _strategy_play(n, args.strategy, args.oracle_cap)
            fraction = 2 * score / (n * (n + 1))
            rows.append(f"{n},{fraction:.8f}")
    except OracleInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return _csv_out(rows, args.out)


def cmd_bounds(args) -> int:
    rows = ["N,opt(N),upper(N),lower(N)"]
    for n in range(args.n_min, args.n_max + 1, args.step):
        report = bounds_mod.bounds_report(n, with_oracle=n <= args.oracle_cap)
        opt = "" if report.optimal is None else str(report.optimal)
        rows.append(f"{n},{opt},{report.upper},{report.lower}")
    return _csv_out(rows, args.out)


def cmd_replay(args) -> int:
    try:
        with open(args.file) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read replay file: {exc}", file=sys.stderr)
        return 1
    try:
        state = gc.replay_from_json(doc)
    except IllegalPick as exc:
        print(f"illegal at index {exc.index}: pick {exc.pick} ({exc.reason})")
        return 3
    except IllegalSequence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"legal: {len(state.history)} moves")
    print(f"player {state.player_score}  taxman {state.taxman_score}  (pot {state.pot_total()})")
    picks = [m.pick for m in state.history]
    if picks:
        matching = mb.sequence_to_matching(picks, build_divisor_cover_graph(state.n))
        pairs = " ".join(f"{lo}-{up}" for lo, up in matching.pairs)
        print(f"matching: {pairs} (weight {matching.weight})")
    else:
        print("matching: (empty)")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from taxman.service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taxman", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_play = sub.add_parser("play", help="play one game with a strategy")
    p_play.add_argument("n", type=int)
    p_play.add_argument("--strategy", choices=STRATEGIES, default="born-free")
    p_play.add_argument("--oracle-cap", type=int, default=oracle_mod.DEFAULT_CAP)
    p_play.set_defaults(func=cmd_play)

    p_sweep = sub.add_parser("sweep", help="CSV of pot fractions over a range of N")
    p_sweep.add_argument("n_min", type=int)
    p_sweep.add_argument("n_max", type=int)
    p_sweep.add_argument("--step", type=int, default=1)
    p_sweep.add_argument("--strategy", choices=STRATEGIES, default="born-free")
    p_sweep.add_argument("--oracle-cap", type=int, default=oracle_mod.DEFAULT_CAP)
    p_sweep.add_argument("--out")
    p_sweep.set_defaults(func=cmd_sweep)

    p_bounds = sub.add_parser("bounds", help="CSV of optimal/upper/lower bounds")
    p_bounds.add_argument("n_min", type=int)
    p_bounds.add_argument("n_max", type=int)
    p_bounds.add_argument("--step", type=int, default=1)
    p_bounds.add_argument("--oracle-cap", type=int, default=oracle_mod.DEFAULT_CAP)
    p_bounds.add_argument("--out")
    p_bounds.set_defaults(func=cmd_bounds)

    p_replay = sub.add_parser("replay", help="validate a recorded game file")
    p_replay.add_argument("file")
    p_replay.set_defaults(func=cmd_replay)

    p_serve = sub.add_parser("serve", help="start the HTTP playground service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TaxmanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
