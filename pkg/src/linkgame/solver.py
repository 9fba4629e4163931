"""Exhaustive perfect-play solving and strategy verification.

solve_rational runs on the syllable abstraction (sound because resolved
crossings in a twist region cancel or clasp by flype + R2, leaving only
the per-syllable net); solve_diagram runs on concrete diagrams and is
three-valued off the rational family.  Their agreement on small shadows
is an acceptance criterion, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from . import kernels
from .diagram import CrossingState, ShadowDiagram
from .game import (
    GameConfig,
    GameOutcome,
    GameState,
    Move,
    Role,
    apply_move,
    game_outcome,
    legal_moves,
    new_game,
    resolved_word,
)
from .words import (
    ClosureKind,
    PseudoTangleWord,
    closure_components,
    shadow_word,
)

FIRST_MOVER = "first"
SECOND_MOVER = "second"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SolveResult:
    winner: str                      # first | second | undetermined
    winning_role: Optional[str]      # linker | unlinker | None
    first_mover: str
    pv: tuple[Move, ...]
    nodes: int
    tt_hits: int
    unknown_influenced: bool = False

    def describe(self) -> str:
        if self.winner == UNDETERMINED:
            return "undetermined (unknown-verdict leaves reach the root)"
        return f"{self.winner} mover ({self.winning_role.capitalize()}) wins"


def _abstract_pv_to_moves(sizes: Sequence[int],
                          pv: Sequence[tuple[int, int]]) -> tuple[Move, ...]:
    """Abstract (syllable, slope) moves to concrete crossing moves.

    The builder numbers crossings consecutively by syllable, and the
    solver's deterministic line always plays the lowest untouched
    crossing of a syllable, so ids follow from the resolution counts.
    """
    offsets = []
    total = 0
    for b in sizes:
        offsets.append(total)
        total += b
    used = [0] * len(sizes)
    moves = []
    for syllable, delta in pv:
        cid = offsets[syllable] + used[syllable]
        used[syllable] += 1
        res = CrossingState.RESOLVED_A if delta > 0 else CrossingState.RESOLVED_B
        moves.append(Move(cid, res))
    return tuple(moves)


def solve_rational(word: Union[PseudoTangleWord, Sequence[int]],
                   closure: Optional[ClosureKind] = None,
                   first_mover: str = Role.UNLINKER,
                   use_memo: bool = True,
                   order_moves: bool = True,
                   backend=None) -> SolveResult:
    """Perfect-play winner for the game on a rational shadow.

    ``word`` is an all-unresolved pseudotangle word (or a bare size
    tuple).  ``closure`` defaults to the unique two-component closure
    and is validated when given.
    """
    if not isinstance(word, PseudoTangleWord):
        word = shadow_word(tuple(word))
    if not word.all_unresolved:
        raise ValueError("solve_rational needs an all-unresolved shadow word")
    _, two_comp = closure_components(word)
    if two_comp is None:
        raise ValueError(f"{word} has no two-component closure")
    if closure is not None and closure is not two_comp:
        raise ValueError(
            f"{closure.value} closure of {word} is not the two-component one")
    kern = backend or kernels
    sizes = word.sizes
    unlinker_wins, nodes, hits, pv = kern.solve_sizes(
        sizes, first_mover == Role.UNLINKER,
        use_memo=use_memo, order_moves=order_moves)
    winning_role = Role.UNLINKER if unlinker_wins else Role.LINKER
    return SolveResult(
        winner=FIRST_MOVER if winning_role == first_mover else SECOND_MOVER,
        winning_role=winning_role,
        first_mover=first_mover,
        pv=_abstract_pv_to_moves(sizes, pv),
        nodes=nodes,
        tt_hits=hits,
    )


# ---------------------------------------------------------------------------
# Concrete-diagram solving
# ---------------------------------------------------------------------------

_WIN_ORDER = {Role.LINKER: 0, None: 1, Role.UNLINKER: 2}


class _GeneralSolver:
    """Three-valued minimax on concrete diagrams (win > unknown > loss)."""

    def __init__(self, budget: int):
        self.budget = budget
        self.memo: dict = {}
        self.nodes = 0
        self.tt_hits = 0
        self.unknown_leaves = 0

    def value(self, state: GameState) -> Optional[str]:
        """Winning role with optimal play, or None when unknown-verdict
        leaves decide the subtree."""
        key = (state.diagram.resolution_key(), state.mover)
        cached = self.memo.get(key)
        if cached is not None:
            self.tt_hits += 1
            return cached[0]
        self.nodes += 1
        if state.terminal:
            outcome = game_outcome(state)
            if outcome.winner is None:
                self.unknown_leaves += 1
            result = outcome.winner
        else:
            seen = []
            result = None
            for move in legal_moves(state):
                child = self.value(apply_move(state, move))
                if child == state.mover:
                    result = child
                    break
                seen.append(child)
            else:
                others = set(seen)
                result = None if None in others else Role.other(state.mover)
        self.memo[key] = (result,)
        return result

    def principal_variation(self, state: GameState) -> tuple[Move, ...]:
        target = self.value(state)
        pv = []
        while not state.terminal:
            for move in legal_moves(state):
                nxt = apply_move(state, move)
                if self.value(nxt) == target:
                    pv.append(move)
                    state = nxt
                    break
            else:
                # a mover facing only unknown/loss children keeps the
                # root value on some unknown child; fall back to first
                move = legal_moves(state)[0]
                pv.append(move)
                state = apply_move(state, move)
        return tuple(pv)


def solve_diagram(source: Union[GameState, GameConfig, ShadowDiagram],
                  first_mover: str = Role.UNLINKER,
                  max_crossings: int = 12,
                  budget: int = 10_000,
                  use_memo: bool = True,
                  backend=None) -> SolveResult:
    """Exact minimax on a concrete diagram, from any position.

    Rational-provenance shadows evaluate leaves through the exact
    rational decider (and run on the compiled kernel); general diagrams
    use the budgeted decider and may return UNDETERMINED.
    """
    if isinstance(source, ShadowDiagram):
        source = GameConfig(shadow=source, first_mover=first_mover, budget=budget)
    if isinstance(source, GameConfig):
        state = new_game(source)
    else:
        state = source
    remaining = len(state.diagram.unresolved_ids())
    if remaining > max_crossings:
        raise ValueError(
            f"{remaining} unresolved crossings exceed the bound {max_crossings}")

    word = resolved_word(state)
    if word is not None:
        kern = backend or kernels
        syllable_of = tuple(c.syllable - 1 for c in state.diagram.crossings)
        trit = {CrossingState.UNRESOLVED: 0,
                CrossingState.RESOLVED_A: 1,
                CrossingState.RESOLVED_B: 2}
        initial = tuple(trit[c.state] for c in state.diagram.crossings)
        unlinker_wins, nodes, hits, pv = kern.solve_concrete(
            syllable_of, len(word), initial,
            state.mover == Role.UNLINKER, use_memo=use_memo)
        winning_role = Role.UNLINKER if unlinker_wins else Role.LINKER
        ids = state.diagram.crossing_ids
        moves = tuple(
            Move(ids[c], CrossingState.RESOLVED_A if t == 1
                 else CrossingState.RESOLVED_B)
            for c, t in pv)
        return SolveResult(
            winner=FIRST_MOVER if winning_role == state.mover else SECOND_MOVER,
            winning_role=winning_role,
            first_mover=state.mover,
            pv=moves,
            nodes=nodes,
            tt_hits=hits,
        )

    solver = _GeneralSolver(budget)
    value = solver.value(state)
    pv = solver.principal_variation(state)
    if value is None:
        winner, role = UNDETERMINED, None
    else:
        role = value
        winner = FIRST_MOVER if role == state.mover else SECOND_MOVER
    return SolveResult(
        winner=winner,
        winning_role=role,
        first_mover=state.mover,
        pv=pv,
        nodes=solver.nodes,
        tt_hits=solver.tt_hits,
        unknown_influenced=solver.unknown_leaves > 0,
    )


# ---------------------------------------------------------------------------
# Strategy verification: exhaustive adversaries
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    strategy: str
    config_desc: str
    strategy_role: str
    lines_total: int = 0
    wins: int = 0
    loss_lines: list = field(default_factory=list)
    unknown_lines: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    invariant_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.loss_lines and not self.unknown_lines
                and not self.invariant_failures)

    def summary(self) -> str:
        status = "OK" if self.ok else "FAIL"
        return (f"[{status}] {self.strategy} as {self.strategy_role} on "
                f"{self.config_desc}: {self.wins}/{self.lines_total} wins, "
                f"{len(self.loss_lines)} losses, "
                f"{len(self.unknown_lines)} unknown, "
                f"{len(self.invariant_failures)} invariant failures")


def verify_strategy(strategy, config: GameConfig,
                    line_check: Optional[Callable] = None,
                    config_desc: str = "") -> VerifyReport:
    """Walk every opponent move sequence against the strategy.

    ``strategy`` is a StrategyId or a policy object from the strategy
    engine.  ``line_check(state, mover_was_strategy)`` may assert extra
    invariants after every move; failures are recorded, not raised.
    The report's loss_lines must be empty for a correct strategy.
    """
    from . import strategies as strat_mod

    policy = strat_mod.policy_for(strategy, config)
    report = VerifyReport(
        strategy=str(getattr(policy, "name", strategy)),
        config_desc=config_desc or repr(config.shadow),
        strategy_role=policy.role,
    )

    def walk(state: GameState, memory) -> None:
        if state.terminal:
            outcome = game_outcome(state)
            report.lines_total += 1
            line = tuple(str(m) for m in state.history)
            verdict_name = str(outcome.verdict)
            report.verdicts[verdict_name] = report.verdicts.get(verdict_name, 0) + 1
            if outcome.winner == policy.role:
                report.wins += 1
            elif outcome.winner is None:
                report.unknown_lines.append(line)
            else:
                report.loss_lines.append(line)
            return
        if state.mover == policy.role:
            try:
                chosen, memory2 = policy.choose(state, memory)
            except Exception as exc:  # a policy error is a lost line
                report.loss_lines.append(
                    tuple(str(m) for m in state.history) + (f"<error: {exc}>",))
                return
            nxt = apply_move(state, chosen.move)
            if line_check is not None:
                failure = line_check(nxt, True)
                if failure:
                    report.invariant_failures.append(failure)
            walk(nxt, memory2)
        else:
            for move in legal_moves(state):
                nxt = apply_move(state, move)
                if line_check is not None:
                    failure = line_check(nxt, False)
                    if failure:
                        report.invariant_failures.append(failure)
                walk(nxt, memory)

    start = new_game(config)
    walk(start, policy.initial_memory(start))
    return report
