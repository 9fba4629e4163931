"""Rules of the Linking-Unlinking Game.

Two players alternate resolving crossings of a two-component link
shadow.  When every crossing is resolved, the Unlinker wins if the
resulting diagram is splittable and the Linker wins if it is
unsplittable; off the rational family the verdict may be three-valued,
in which case the outcome carries no winner.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import (
    CrossingState,
    Orientation,
    ShadowDiagram,
    canonical_orientation,
    classify_crossing,
    crossing_sign,
    pseudo_linking_number,
)
from .simplify import decide_splittability
from .verdict import Verdict
from .words import PseudoTangleWord, Syllable, rational_splittability


class Role:
    LINKER = "linker"
    UNLINKER = "unlinker"

    @staticmethod
    def other(role: str) -> str:
        return Role.UNLINKER if role == Role.LINKER else Role.LINKER


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    crossing: int
    resolution: CrossingState

    def __post_init__(self):
        if not self.resolution.resolved:
            raise ValueError("a move must resolve its crossing")

    def __str__(self) -> str:
        return f"m {self.crossing} {self.resolution.value}"


@dataclass(frozen=True)
class GameConfig:
    shadow: ShadowDiagram
    first_mover: str = Role.UNLINKER
    budget: int = 10_000

    def __post_init__(self):
        if self.shadow.n_components != 2:
            raise ValueError("the game is played on 2-component shadows")
        if any(c.state.resolved for c in self.shadow.crossings):
            raise ValueError("game shadows start with every crossing unresolved")
        if self.first_mover not in (Role.LINKER, Role.UNLINKER):
            raise ValueError(f"unknown role {self.first_mover!r}")


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    diagram: ShadowDiagram
    mover: str
    history: tuple[Move, ...] = ()
    orientation: Orientation = None  # fixed at game start

    @property
    def moves_made(self) -> int:
        return len(self.history)

    @property
    def terminal(self) -> bool:
        return not self.diagram.unresolved_ids()

    @property
    def plk(self) -> Fraction:
        return pseudo_linking_number(self.diagram, self.orientation)

    def last_move(self) -> Optional[Move]:
        return self.history[-1] if self.history else None


@dataclass(frozen=True)
class GameOutcome:
    winner: Optional[str]
    verdict: Verdict


def new_game(config: GameConfig) -> GameState:
    return GameState(
        config=config,
        diagram=config.shadow,
        mover=config.first_mover,
        history=(),
        orientation=canonical_orientation(config.shadow),
    )


def legal_moves(state: GameState) -> list[Move]:
    """Two moves per unresolved crossing; empty exactly at terminal states."""
    return [Move(cid, res)
            for cid in state.diagram.unresolved_ids()
            for res in (CrossingState.RESOLVED_A, CrossingState.RESOLVED_B)]


def apply_move(state: GameState, move: Move) -> GameState:
    crossing = state.diagram.crossing_by_id.get(move.crossing)
    if crossing is None:
        raise IllegalMove(f"no crossing {move.crossing}")
    if crossing.state.resolved:
        raise IllegalMove(f"crossing {move.crossing} is already resolved")
    return replace(
        state,
        diagram=state.diagram.with_state(move.crossing, move.resolution),
        mover=Role.other(state.mover),
        history=state.history + (move,),
    )


def resolved_word(state: GameState) -> Optional[PseudoTangleWord]:
    """The pseudotangle word of a rational-provenance diagram's current
    resolution state (nets by slope, per syllable)."""
    diagram = state.diagram
    if any(c.syllable is None for c in diagram.crossings):
        return None
    n = max((c.syllable for c in diagram.crossings), default=1)
    nets = [0] * n
    unresolved = [0] * n
    for c in diagram.crossings:
        if c.state is CrossingState.RESOLVED_A:
            nets[c.syllable - 1] += 1
        elif c.state is CrossingState.RESOLVED_B:
            nets[c.syllable - 1] -= 1
        else:
            unresolved[c.syllable - 1] += 1
    return PseudoTangleWord(tuple(
        Syllable(net, unres) for net, unres in zip(nets, unresolved)))


def terminal_verdict(state: GameState) -> Verdict:
    """Exact rational verdict when the shadow has builder provenance,
    otherwise the budgeted diagram verdict."""
    w = resolved_word(state)
    if w is not None:
        return rational_splittability(w)
    return decide_splittability(state.diagram, state.config.budget)


def game_outcome(state: GameState) -> Optional[GameOutcome]:
    """Present exactly when the game is over."""
    if not state.terminal:
        return None
    verdict = terminal_verdict(state)
    if verdict.is_splittable:
        return GameOutcome(Role.UNLINKER, verdict)
    if verdict.is_unsplittable:
        return GameOutcome(Role.LINKER, verdict)
    return GameOutcome(None, verdict)


def replay(config: GameConfig, moves: Sequence[Move]) -> GameOutcome:
    """Fold apply_move over the moves; the sequence must reach the end of
    the game.  The index of the first illegal move is reported."""
    state = new_game(config)
    for i, move in enumerate(moves):
        try:
            state = apply_move(state, move)
        except IllegalMove as exc:
            raise IllegalMove(f"move {i}: {exc}") from None
    outcome = game_outcome(state)
    if outcome is None:
        raise IllegalMove(
            f"move list ends early: {len(state.diagram.unresolved_ids())} "
            "crossings still unresolved")
    return outcome


# ---------------------------------------------------------------------------
# Move-log format: `m <crossing-id> </ or \>` lines, with an optional
# header naming the shadow file and the first mover.
# ---------------------------------------------------------------------------

_MOVE_RE = re.compile(r"^m\s+(\d+)\s+([/\\])\s*$")


def render_move_log(config: GameConfig, moves: Sequence[Move],
                    shadow_ref: str = "-") -> str:
    lines = [f"shadow {shadow_ref}", f"first {config.first_mover}"]
    lines += [str(m) for m in moves]
    return "\n".join(lines) + "\n"


def parse_move_log(text: str) -> tuple[Optional[str], Optional[str], list[Move]]:
    """Return (shadow reference, first mover, moves)."""
    shadow_ref = None
    first = None
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("shadow "):
            shadow_ref = line.split(None, 1)[1]
            continue
        if line.startswith("first "):
            first = line.split(None, 1)[1]
            continue
        m = _MOVE_RE.match(line)
        if not m:
            raise ValueError(f"move log line {lineno}: cannot parse {raw!r}")
        moves.append(Move(int(m.group(1)), CrossingState(m.group(2))))
    return shadow_ref, first, moves
