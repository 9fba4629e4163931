"""Session-oriented HTTP API hosting live games for the board UI.

Endpoints: POST /sessions, GET /sessions/{id}, POST /sessions/{id}/moves,
GET /sessions/{id}/hint, GET /sessions/{id}/analysis.  The server is the
single authority on legality; the human's move and the engine's reply
are applied atomically under a per-session lock; resubmitting the same
move with the same state-version token returns the cached response
instead of double-moving.

The engine ladder is explicit in every reply: a theorem strategy when
one applies to its seat, else a bounded exact solve, else the lowest-id
legal move flagged as arbitrary.

Sessions persist as an append-only move log per session; replay rebuilds
the state (and the strategy memory) after a restart.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .construct import build_rational_shadow, hopf_shadow, two_component_shadow, whitehead_shadow
from .diagram import CrossingState, ShadowDiagram, classify_crossing, parse_pd, render_pd
from .game import (
    GameConfig,
    GameState,
    Move,
    Role,
    apply_move,
    game_outcome,
    legal_moves,
    new_game,
)
from .solver import solve_diagram
from .strategies import (
    InapplicableStrategy,
    StrategyMemory,
    applicable_strategies,
    policy_for,
)
from .words import ClosureKind, parse_word

ENGINE_BOUND = 12


class CreateSession(BaseModel):
    word: Optional[str] = None
    closure: Optional[str] = None
    pd: Optional[str] = None
    preset: Optional[str] = None
    human_role: str = Role.UNLINKER
    first_mover: str = Role.UNLINKER
    engine: str = "auto"          # auto | strategy | solver
    budget: int = 10_000


class MoveRequest(BaseModel):
    crossing: int
    resolution: str               # "/" or "\\"
    version: int


@dataclass
class Session:
    id: str
    config: GameConfig
    state: GameState
    human_role: str
    engine_role: str
    engine_mode: str
    policy: Optional[object] = None
    memory: Optional[StrategyMemory] = None
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_request: Optional[tuple] = None
    last_response: Optional[dict] = None
    engine_notes: dict = field(default_factory=dict)  # ply -> note
    shadow_text: str = ""

    @property
    def version(self) -> int:
        return self.state.moves_made


def _build_shadow(req: CreateSession) -> tuple[ShadowDiagram, str]:
    given = [bool(req.word), bool(req.pd), bool(req.preset)]
    if sum(given) != 1:
        raise HTTPException(422, "give exactly one of word, pd, preset")
    if req.preset:
        presets = {"hopf": hopf_shadow, "whitehead": whitehead_shadow}
        if req.preset not in presets:
            raise HTTPException(422, f"unknown preset {req.preset!r}")
        shadow = presets[req.preset]()
        return shadow, f"preset:{req.preset}"
    if req.pd:
        try:
            shadow = parse_pd(req.pd, require_two_components=True)
        except Exception as exc:
            raise HTTPException(422, f"bad PD payload: {exc}")
        return shadow, req.pd
    try:
        from .words import shadow_word

        w = shadow_word(parse_word(req.word).sizes)  # games run on shadows
        if req.closure:
            shadow = build_rational_shadow(w, ClosureKind(req.closure))
        else:
            shadow = two_component_shadow(w)
    except Exception as exc:
        raise HTTPException(422, f"bad word payload: {exc}")
    return shadow, f"word:{req.word}:{req.closure or 'auto'}"


def _pick_policy(config: GameConfig, engine_role: str):
    for strategy in applicable_strategies(config):
        try:
            policy = policy_for(strategy, config)
        except InapplicableStrategy:
            continue
        if policy.role == engine_role:
            return policy
    return None


class SessionStore:
    def __init__(self, state_dir: Optional[str] = None):
        self.sessions: dict[str, Session] = {}
        self.state_dir = state_dir
        if state_dir:
            os.makedirs(state_dir, exist_ok=True)

    # -- persistence --------------------------------------------------------

    def _meta_path(self, sid: str) -> str:
        return os.path.join(self.state_dir, f"{sid}.json")

    def _log_path(self, sid: str) -> str:
        return os.path.join(self.state_dir, f"{sid}.log")

    def persist_new(self, session: Session, req: CreateSession) -> None:
        if not self.state_dir:
            return
        meta = {
            "id": session.id,
            "request": req.model_dump(),
            "shadow_pd": render_pd(session.config.shadow),
        }
        with open(self._meta_path(session.id), "w") as fh:
            json.dump(meta, fh)
        open(self._log_path(session.id), "w").close()

    def append_move(self, session: Session, move: Move, by: str) -> None:
        if not self.state_dir:
            return
        with open(self._log_path(session.id), "a") as fh:
            fh.write(f"m {move.crossing} {move.resolution.value} # {by}\n")

    def restore(self, sid: str) -> Optional[Session]:
        if not self.state_dir or not os.path.exists(self._meta_path(sid)):
            return None
        with open(self._meta_path(sid)) as fh:
            meta = json.load(fh)
        req = CreateSession(**meta["request"])
        shadow = parse_pd(meta["shadow_pd"], require_two_components=True)
        session = _make_session(sid, req, shadow, meta["shadow_pd"])
        with open(self._log_path(sid)) as fh:
            for line in fh:
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                _, cid, res = body.split()
                move = Move(int(cid), CrossingState(res))
                if (session.policy is not None
                        and session.state.mover == session.engine_role):
                    # regenerate deterministic strategy memory
                    try:
                        chosen, memory = session.policy.choose(
                            session.state, session.memory)
                        if chosen.move == move:
                            session.memory = memory
                        else:
                            session.policy = None
                    except Exception:
                        session.policy = None
                session.state = apply_move(session.state, move)
        return session

    # -- access ---------------------------------------------------------------

    def get(self, sid: str) -> Session:
        session = self.sessions.get(sid)
        if session is None:
            session = self.restore(sid)
            if session is not None:
                self.sessions[sid] = session
        if session is None:
            raise HTTPException(404, f"no session {sid}")
        return session

    def add(self, session: Session) -> None:
        self.sessions[session.id] = session


def _make_session(sid: str, req: CreateSession, shadow: ShadowDiagram,
                  shadow_text: str) -> Session:
    if req.human_role not in (Role.LINKER, Role.UNLINKER):
        raise HTTPException(422, f"unknown role {req.human_role!r}")
    try:
        config = GameConfig(shadow=shadow, first_mover=req.first_mover,
                            budget=req.budget)
    except ValueError as exc:
        raise HTTPException(422, str(exc))
    state = new_game(config)
    engine_role = Role.other(req.human_role)
    policy = None
    if req.engine in ("auto", "strategy"):
        policy = _pick_policy(config, engine_role)
    session = Session(
        id=sid, config=config, state=state,
        human_role=req.human_role, engine_role=engine_role,
        engine_mode=req.engine, policy=policy, shadow_text=shadow_text,
    )
    if policy is not None:
        session.memory = policy.initial_memory(state)
    return session


# ---------------------------------------------------------------------------
# Payloads
# ---------------------------------------------------------------------------


def state_payload(session: Session) -> dict:
    state = session.state
    diagram = state.diagram
    crossings = []
    for c in diagram.crossings:
        sign = None
        if c.state.resolved:
            from .diagram import crossing_sign

            sign = crossing_sign(diagram, state.orientation, c.id)
        crossings.append({
            "id": c.id,
            "state": c.state.value,
            "kind": classify_crossing(diagram, c.id),
            "sign": sign,
            "x": c.position[0] if c.position else None,
            "y": c.position[1] if c.position else None,
            "slot_dirs": [list(d) for d in c.slot_dirs] if c.slot_dirs else None,
        })
    arcs = []
    for a in diagram.arcs:
        arcs.append({
            "id": a.id,
            "component": diagram.component_of_arc[a.id],
            "ends": [list(a.ends[0]), list(a.ends[1])],
            "path": [list(p) for p in a.path] if a.path else None,
            # direction of travel under the game's fixed orientation:
            # true means the drawn path order is the travel order
            "forward": state.orientation.forward[a.id],
        })
    loops = []
    for l in diagram.free_loops:
        loops.append({
            "id": l.id,
            "component": diagram.component_of_loop[l.id],
            "path": [list(p) for p in l.path] if l.path else None,
        })
    outcome = game_outcome(state)
    plk = state.plk
    # per-ply pseudo-linking numbers under the game's fixed orientation
    plk_trace = []
    replayed = session.config.shadow
    from .diagram import pseudo_linking_number

    for m in state.history:
        replayed = replayed.with_state(m.crossing, m.resolution)
        plk_trace.append(float(pseudo_linking_number(replayed,
                                                     state.orientation)))
    return {
        "session": session.id,
        "version": session.version,
        "mover": state.mover,
        "human_role": session.human_role,
        "engine_role": session.engine_role,
        "first_mover": session.config.first_mover,
        "terminal": state.terminal,
        "plk": float(plk),
        "plk_exact": str(plk),
        "crossings": crossings,
        "arcs": arcs,
        "loops": loops,
        "history": [
            {"ply": i, "crossing": m.crossing, "resolution": m.resolution.value,
             "by": (session.config.first_mover if i % 2 == 0
                    else Role.other(session.config.first_mover)),
             "plk": plk_trace[i],
             "engine_note": session.engine_notes.get(i)}
            for i, m in enumerate(state.history)
        ],
        "outcome": None if outcome is None else {
            "winner": outcome.winner,
            "verdict": str(outcome.verdict),
            "detail": outcome.verdict.detail,
        },
    }


def _engine_move(session: Session) -> tuple[Move, str]:
    state = session.state
    if session.policy is not None and session.engine_mode in ("auto", "strategy"):
        try:
            chosen, memory = session.policy.choose(state, session.memory)
            session.memory = memory
            return chosen.move, f"strategy {session.policy.name}: {chosen.rationale}"
        except InapplicableStrategy:
            session.policy = None
    if session.engine_mode != "strategy":
        remaining = len(state.diagram.unresolved_ids())
        if remaining <= ENGINE_BOUND:
            result = solve_diagram(state, budget=session.config.budget)
            if result.pv:
                confidence = ("winning" if result.winning_role ==
                              session.engine_role else "best effort")
                return result.pv[0], f"solver ({confidence})"
    move = legal_moves(state)[0]
    return move, "arbitrary (no strategy or solver available)"


# ---------------------------------------------------------------------------
# App
# ---------------------------------------------------------------------------


def create_app(state_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="linkgame service")
    store = SessionStore(state_dir)
    app.state.store = store

    @app.post("/sessions")
    def create_session(req: CreateSession):
        shadow, shadow_text = _build_shadow(req)
        sid = secrets.token_hex(8)
        session = _make_session(sid, req, shadow, shadow_text)
        store.add(session)
        store.persist_new(session, req)
        # if the engine moves first, reply immediately
        notes = []
        if (not session.state.terminal
                and session.state.mover == session.engine_role):
            move, note = _engine_move(session)
            session.engine_notes[session.version] = note
            session.state = apply_move(session.state, move)
            store.append_move(session, move, "engine")
            notes.append(note)
        payload = state_payload(session)
        payload["engine_notes"] = notes
        return payload

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = store.get(sid)
        with session.lock:
            return state_payload(session)

    @app.post("/sessions/{sid}/moves")
    def post_move(sid: str, req: MoveRequest):
        session = store.get(sid)
        with session.lock:
            key = (req.version, req.crossing, req.resolution)
            if session.last_request == key and session.last_response:
                return session.last_response
            if req.version != session.version:
                raise HTTPException(
                    409, f"stale state version {req.version}; "
                         f"server is at {session.version}")
            if session.state.terminal:
                raise HTTPException(409, "the game is over")
            if session.state.mover != session.human_role:
                raise HTTPException(409, "not the human's turn")
            try:
                resolution = CrossingState(req.resolution)
                if not resolution.resolved:
                    raise ValueError("resolution must be / or \\")
                move = Move(req.crossing, resolution)
                session.state = apply_move(session.state, move)
            except (ValueError, KeyError) as exc:
                raise HTTPException(422, f"illegal move: {exc}")
            store.append_move(session, move, "human")
            notes = []
            if (not session.state.terminal
                    and session.state.mover == session.engine_role):
                engine_move, note = _engine_move(session)
                session.engine_notes[session.version] = note
                session.state = apply_move(session.state, engine_move)
                store.append_move(session, engine_move, "engine")
                notes.append(note)
            session.updated = time.time()
            payload = state_payload(session)
            payload["engine_notes"] = notes
            session.last_request = key
            session.last_response = payload
            return payload

    @app.get("/sessions/{sid}/hint")
    def get_hint(sid: str):
        session = store.get(sid)
        with session.lock:
            state = session.state
            if state.terminal:
                raise HTTPException(409, "the game is over")
            mover = state.mover
            for strategy in applicable_strategies(session.config):
                try:
                    policy = policy_for(strategy, session.config)
                except InapplicableStrategy:
                    continue
                if policy.role != mover:
                    continue
                try:
                    memory = _replay_memory(policy, session)
                    chosen, _ = policy.choose(state, memory)
                    return {"crossing": chosen.move.crossing,
                            "resolution": chosen.move.resolution.value,
                            "rationale": f"{policy.name}: {chosen.rationale}"}
                except InapplicableStrategy:
                    continue
            remaining = len(state.diagram.unresolved_ids())
            if remaining <= ENGINE_BOUND:
                result = solve_diagram(state, budget=session.config.budget)
                if result.pv:
                    return {"crossing": result.pv[0].crossing,
                            "resolution": result.pv[0].resolution.value,
                            "rationale": f"solver: {result.describe()}"}
            move = legal_moves(state)[0]
            return {"crossing": move.crossing,
                    "resolution": move.resolution.value,
                    "rationale": "arbitrary legal move"}

    @app.get("/sessions/{sid}/analysis")
    def get_analysis(sid: str):
        session = store.get(sid)
        with session.lock:
            state = session.state
            remaining = len(state.diagram.unresolved_ids())
            if remaining > ENGINE_BOUND:
                raise HTTPException(
                    409, f"{remaining} unresolved crossings exceed the "
                         f"analysis bound {ENGINE_BOUND}")
            result = solve_diagram(state, budget=session.config.budget)
            return {
                "winner": result.winner,
                "winning_role": result.winning_role,
                "first_mover": result.first_mover,
                "nodes": result.nodes,
                "tt_hits": result.tt_hits,
                "unknown_influenced": result.unknown_influenced,
                "pv": [str(m) for m in result.pv],
                "summary": result.describe(),
            }

    return app


def _replay_memory(policy, session: Session) -> StrategyMemory:
    """Rebuild the memory a policy would hold after the session history.

    Used for hints, where the hinted role may differ from the engine's;
    memory is deterministic given the history, so replaying the policy's
    own turns reconstructs it.
    """
    state = new_game(session.config)
    memory = policy.initial_memory(state)
    for move in session.state.history:
        if state.mover == policy.role:
            try:
                _, memory = policy.choose(state, memory)
            except InapplicableStrategy:
                pass
        state = apply_move(state, move)
    return memory
