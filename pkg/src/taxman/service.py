"""HTTP API hosting interactive game sessions and hint/bound queries.

Sessions are in-memory with idle expiry; every mutation of a session is
serialized behind its own lock.  All game rules are evaluated server-side;
clients only render the returned state.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from taxman import born_free as bf
from taxman import bounds as bounds_mod
from taxman import game_core as gc
from taxman import oracle as oracle_mod
from taxman.errors import IllegalPick

DEFAULT_MAX_N = 10_000
DEFAULT_BOUNDS_CAP = 300
DEFAULT_SESSION_TTL = 3600.0

HINT_STRATEGIES = ("born-free", "oracle")


@dataclass
class Session:
    id: str
    state: gc.GameState
    created: float
    last_touch: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    swept: tuple = ()


class CreateGameRequest(BaseModel):
    n: int


class PickRequest(BaseModel):
    value: int


def _state_payload(session: Session) -> dict:
    state = session.state
    return {
        "id": session.id,
        "n": state.n,
        "in_play": sorted(state.in_play),
        "player_score": state.player_score,
        "taxman_score": state.taxman_score,
        "legal_picks": sorted(gc.legal_picks(state)),
        "picks": [m.pick for m in state.history],
        "history": [{"pick": m.pick, "taxed": list(m.taxed)} for m in state.history],
        "swept": list(session.swept),
        "game_over": state.finalized,
        "outcome": state.outcome(),
    }


def create_app(
    max_n: int = DEFAULT_MAX_N,
    oracle_cap: int = oracle_mod.DEFAULT_CAP,
    bounds_cap: int = DEFAULT_BOUNDS_CAP,
    session_ttl: float = DEFAULT_SESSION_TTL,
) -> FastAPI:
    app = FastAPI(title="taxman playground service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()
    bounds_cache: dict[int, bounds_mod.BoundsReport] = {}
    bounds_lock = threading.Lock()

    def _purge_expired(now: float) -> None:
        stale = [sid for sid, s in sessions.items() if now - s.last_touch > session_ttl]
        for sid in stale:
            sessions.pop(sid, None)

    def _get_session(session_id: str) -> Session:
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail={"reason": "unknown-session"})
        session.last_touch = time.monotonic()
        return session

    def _auto_finalize(session: Session) -> None:
        if not session.state.finalized and not gc.legal_picks(session.state):
            session.swept = tuple(sorted(session.state.in_play))
            session.state = gc.finalize(session.state)

    @app.post("/games")
    def create_game(req: CreateGameRequest):
        if not 1 <= req.n <= max_n:
            raise HTTPException(
                status_code=400,
                detail={"reason": "invalid-n", "message": f"n must be in 1..{max_n}"},
            )
        now = time.monotonic()
        session = Session(
            id=secrets.token_hex(16), state=gc.new_standard_game(req.n), created=now, last_touch=now
        )
        _auto_finalize(session)
        with sessions_lock:
            _purge_expired(now)
            sessions[session.id] = session
        return _state_payload(session)

    @app.post("/games/{session_id}/pick")
    def pick(session_id: str, req: PickRequest):
        session = _get_session(session_id)
        with session.lock:
            try:
                session.state = gc.apply_pick(session.state, req.value)
            except IllegalPick as exc:
                raise HTTPException(
                    status_code=409,
                    detail={"reason": exc.reason, "message": str(exc)},
                ) from None
            taxed = list(session.state.history.moves[-1].taxed)
            _auto_finalize(session)
            return {"state": _state_payload(session), "taxed": taxed}

    @app.get("/games/{session_id}/hint")
    def hint(session_id: str, strategy: str = "born-free"):
        if strategy not in HINT_STRATEGIES:
            raise HTTPException(status_code=400, detail={"reason": "unknown-strategy"})
        session = _get_session(session_id)
        with session.lock:
            state = session.state
            legal = gc.legal_picks(state)
            if not legal:
                return {"strategy": strategy, "suggested_pick": None, "projected_final_score": None}
            if strategy == "oracle":
                try:
                    gain, picks = oracle_mod.optimal_continuation(
                        state.n, state.in_play, cap=oracle_cap
                    )
                except oracle_mod.OracleInfeasible as exc:
                    raise HTTPException(
                        status_code=400, detail={"reason": "oracle-infeasible", "message": str(exc)}
                    ) from None
                suggestion = picks[0] if picks else None
                projected = state.player_score + gain
            else:
                matching, picks = bf.born_free_restricted(state.n, state.in_play)
                if picks:
                    suggestion = picks[0]
                    projected = state.player_score + matching.weight
                else:
                    # greedy found no prime-quotient pair; fall back to the
                    # largest legal pick so the hint stays playable
                    suggestion = max(legal)
                    projected = state.player_score + suggestion
            return {
                "strategy": strategy,
                "suggested_pick": suggestion,
                "projected_final_score": projected,
            }

    @app.get("/bounds")
    def bounds(n: int):
        if not 1 <= n <= bounds_cap:
            raise HTTPException(
                status_code=400,
                detail={"reason": "invalid-n", "message": f"n must be in 1..{bounds_cap}"},
            )
        with bounds_lock:
            report = bounds_cache.get(n)
        if report is None:
            report = bounds_mod.bounds_report(n, with_oracle=n <= oracle_cap)
            with bounds_lock:
                bounds_cache[n] = report
        return {
            "n": report.n,
            "lower": report.lower,
            "upper": report.upper,
            "optimal": report.optimal,
        }

    return app


app = create_app()
