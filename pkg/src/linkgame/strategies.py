"""Executable winning strategies with applicability checks.

Each strategy is a reactive policy: given the game state (whose history
carries the opponent's last move) and a small memory of its own plan
markers, it produces the next move.  Arbitrary choices in the source
arguments ("play on any other SI") are pinned to the lowest crossing id
for reproducibility.

Rational-shadow policies reason in overstrand-slope terms, which the
builder makes exact (positive slope = RESOLVED_A); the sign-based
twist-region responses agree with them under any fixed orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Union

from .diagram import (
    CrossingState,
    classify_crossing,
    crossing_sign,
    region_of_crossing,
    resolution_for_sign,
    twist_regions,
)
from .game import GameConfig, GameState, Move, Role
from .words import (
    Decomposition,
    IsolatedSi,
    NsiString,
    PseudoTangleWord,
    StringCase,
    decompose_word,
)


class StrategyId(str, Enum):
    THM1_UNLINKER_ALWAYS = "Thm1-Unlinker-always"
    THM1_2_SECOND = "Thm1-2-second"
    THM2_SECOND = "Thm2-second"
    THM3_SECOND = "Thm3-second"
    THM4_SECOND = "Thm4-second"
    THM4_FIRST = "Thm4-first"
    THM6_LINKER_SECOND = "Thm6-Linker-second"
    THM6_LINKER_FIRST = "Thm6-Linker-first"


class InapplicableStrategy(ValueError):
    pass


@dataclass(frozen=True)
class ChosenMove:
    move: Move
    rationale: str


@dataclass(frozen=True)
class StrategyMemory:
    """Plan markers threaded through a policy's own turns.

    ``pair_done`` marks, per NSI string, that the odd-ends endgame
    response has been played; ``first_nsi_done`` marks the sign-copying
    first NSI response of the linking-number ladder.
    """

    pair_done: frozenset = frozenset()
    first_nsi_done: bool = False
    opened: bool = False


# ---------------------------------------------------------------------------
# Shadow bookkeeping helpers
# ---------------------------------------------------------------------------


def shadow_sizes(config: GameConfig) -> Optional[tuple[int, ...]]:
    """Syllable sizes of a builder-provenance shadow, else None."""
    crossings = config.shadow.crossings
    if any(c.syllable is None for c in crossings):
        return None
    n = max((c.syllable for c in crossings), default=0)
    sizes = [0] * n
    for c in crossings:
        sizes[c.syllable - 1] += 1
    return tuple(sizes)


def _syllable_unresolved(state: GameState, syllable: int) -> list[int]:
    return sorted(c.id for c in state.diagram.crossings
                  if c.syllable == syllable and not c.state.resolved)


def _slope(state: CrossingState) -> int:
    return 1 if state is CrossingState.RESOLVED_A else -1


def _slope_move(state: GameState, syllable: int, slope: int) -> Move:
    ids = _syllable_unresolved(state, syllable)
    if not ids:
        raise InapplicableStrategy(f"no unresolved crossing in syllable {syllable}")
    res = (CrossingState.RESOLVED_A if slope > 0 else CrossingState.RESOLVED_B)
    return Move(ids[0], res)


def _lowest_unresolved(state: GameState, pool) -> int:
    ids = [cid for cid in pool
           if not state.diagram.crossing_by_id[cid].state.resolved]
    if not ids:
        raise InapplicableStrategy("response pool is exhausted")
    return min(ids)


# ---------------------------------------------------------------------------
# Twist-region responses (general diagrams, sign-based)
# ---------------------------------------------------------------------------


def r2_response(state: GameState, memory: StrategyMemory,
                last_move: Move) -> Move:
    """Resolve a crossing in the opponent's twist region with the
    opposite crossing sign, so a flype plus R2 cancels the pair."""
    return _region_response(state, last_move, same_sign=False)


def anti_r2_response(state: GameState, memory: StrategyMemory,
                     last_move: Move) -> Move:
    """Resolve a crossing in the opponent's twist region with the same
    crossing sign, clasping the pair."""
    return _region_response(state, last_move, same_sign=True)


def _region_response(state: GameState, last_move: Move, same_sign: bool) -> Move:
    regions = twist_regions(state.config.shadow)
    region = region_of_crossing(regions, last_move.crossing)
    candidates = [cid for cid in region.crossings
                  if not state.diagram.crossing_by_id[cid].state.resolved]
    if not candidates:
        raise InapplicableStrategy(
            f"no unresolved crossing left in the twist region of "
            f"{last_move.crossing}")
    target_sign = crossing_sign(state.diagram, state.orientation,
                                last_move.crossing)
    if not same_sign:
        target_sign = -target_sign
    cid = min(candidates)
    res = resolution_for_sign(state.diagram, state.orientation, cid, target_sign)
    return Move(cid, res)


# ---------------------------------------------------------------------------
# Policies
# ---------------------------------------------------------------------------


class Policy:
    name: str

    def __init__(self, config: GameConfig, role: str):
        self.config = config
        self.role = role

    def initial_memory(self, state: GameState) -> StrategyMemory:
        return StrategyMemory()

    def choose(self, state: GameState,
               memory: StrategyMemory) -> tuple[ChosenMove, StrategyMemory]:
        raise NotImplementedError

    def _require_turn(self, state: GameState) -> None:
        if state.mover != self.role:
            raise InapplicableStrategy(
                f"{self.name} plays {self.role}, but it is "
                f"{state.mover}'s turn")


class Thm1UnlinkerAlways(Policy):
    """Every completion of an all-even-twist shadow with empty bottom
    blocks is splittable, so any legal move does."""

    name = StrategyId.THM1_UNLINKER_ALWAYS.value

    def choose(self, state, memory):
        self._require_turn(state)
        cid = min(state.diagram.unresolved_ids())
        return (ChosenMove(Move(cid, CrossingState.RESOLVED_A),
                           "any move keeps every completion splittable"),
                memory)


class _RationalSecondResponder(Policy):
    """Shared machinery: respond on the opponent's syllable, with the
    odd-ends pair endgame where a plan designates one."""

    def _pair_response(self, state, memory, last, pair, string_key,
                       linker_goal: bool):
        """Endgame bookkeeping for a two-odd-ends pair of syllables."""
        syl = state.diagram.crossing_by_id[last.crossing].syllable
        other = pair[1] if syl == pair[0] else pair[0]
        exhausted = not _syllable_unresolved(state, syl)
        if exhausted and string_key not in memory.pair_done:
            slope = _slope(last.resolution)
            goal_slope = slope if linker_goal else -slope
            move = _slope_move(state, other, goal_slope)
            memory = replace(memory,
                             pair_done=memory.pair_done | {string_key})
            tag = "matching" if linker_goal else "opposing"
            return (ChosenMove(move,
                               f"pair endgame: {tag} slope on syllable {other}"),
                    memory)
        move = _slope_move(state, syl, -_slope(last.resolution))
        return (ChosenMove(move, f"R2 response in syllable {syl}"), memory)

    def _r2_same_syllable(self, state, last):
        syl = state.diagram.crossing_by_id[last.crossing].syllable
        move = _slope_move(state, syl, -_slope(last.resolution))
        return ChosenMove(move, f"R2 response in syllable {syl}")


class Thm1_2Second(_RationalSecondResponder):
    """All syllables even, some odd-position one nonempty: respond R2 on
    the opponent's syllable; as the Linker, clasp the designated
    odd-position region's final pair."""

    name = StrategyId.THM1_2_SECOND.value

    def __init__(self, config, role, sizes):
        super().__init__(config, role)
        self.designated = next(
            i + 1 for i in range(0, len(sizes), 2) if sizes[i] > 0)

    def choose(self, state, memory):
        self._require_turn(state)
        last = state.last_move()
        syl = state.diagram.crossing_by_id[last.crossing].syllable
        if (self.role == Role.LINKER and syl == self.designated
                and len(_syllable_unresolved(state, syl)) == 1):
            move = _slope_move(state, syl, _slope(last.resolution))
            return (ChosenMove(move,
                               f"anti-R2 clasp in designated syllable {syl}"),
                    memory)
        return self._r2_same_syllable(state, last), memory


class Thm2Second(_RationalSecondResponder):
    """Two odd syllables: R2 responses, then copy (Linker) or oppose
    (Unlinker) the slope of the move that exhausts a syllable."""

    name = StrategyId.THM2_SECOND.value

    def __init__(self, config, role, sizes):
        super().__init__(config, role)
        self.pair = (1, 2)

    def choose(self, state, memory):
        self._require_turn(state)
        last = state.last_move()
        return self._pair_response(state, memory, last, self.pair,
                                   string_key=0,
                                   linker_goal=self.role == Role.LINKER)


class Thm3Second(_RationalSecondResponder):
    """Odd ends around even middles: the two odd ends play the pair
    endgame, the middles get plain R2 responses."""

    name = StrategyId.THM3_SECOND.value

    def __init__(self, config, role, sizes):
        super().__init__(config, role)
        self.pair = (1, len(sizes))

    def choose(self, state, memory):
        self._require_turn(state)
        last = state.last_move()
        syl = state.diagram.crossing_by_id[last.crossing].syllable
        if syl in self.pair:
            return self._pair_response(state, memory, last, self.pair,
                                       string_key=0,
                                       linker_goal=self.role == Role.LINKER)
        return self._r2_same_syllable(state, last), memory


class Thm4Second(_RationalSecondResponder):
    """Decomposition-guided play on any rational two-component shadow
    with evenly many SIs.

    SI moves are answered on another SI; moves in a non-final NSI string
    are answered with that string's splitting (unlinker-goal) policy;
    moves in the final string are answered with the policy matching this
    player's real role.
    """

    name = StrategyId.THM4_SECOND.value

    def __init__(self, config, role, word: PseudoTangleWord):
        super().__init__(config, role)
        self.word = word
        self.decomposition = decompose_word(word)
        self.si_syllables = set(self.decomposition.si_positions)
        strings = self.decomposition.nsi_strings
        self.string_of_syllable = {}
        for k, s in enumerate(strings):
            for idx in s.indices:
                self.string_of_syllable[idx] = (k, s)
        self.final_string_index = len(strings) - 1
        self.si_pool = [c.id for c in config.shadow.crossings
                        if c.syllable in self.si_syllables]

    def choose(self, state, memory):
        self._require_turn(state)
        last = state.last_move()
        syl = state.diagram.crossing_by_id[last.crossing].syllable
        if syl in self.si_syllables:
            cid = _lowest_unresolved(state, self.si_pool)
            return (ChosenMove(Move(cid, CrossingState.RESOLVED_A),
                               "SI pairing response"), memory)
        k, string = self.string_of_syllable[syl]
        linker_goal = (k == self.final_string_index
                       and self.role == Role.LINKER)
        if string.case is StringCase.SINGLE_EVEN:
            d = string.indices[0]
            if linker_goal and len(_syllable_unresolved(state, d)) == 1:
                move = _slope_move(state, d, _slope(last.resolution))
                return (ChosenMove(move, f"anti-R2 clasp in syllable {d}"),
                        memory)
            return self._r2_same_syllable(state, last), memory
        pair = (string.indices[0], string.indices[-1])
        if syl in pair:
            return self._pair_response(state, memory, last, pair,
                                       string_key=k, linker_goal=linker_goal)
        return self._r2_same_syllable(state, last), memory


class Thm4First(Thm4Second):
    """Odd SI count: open on an SI, then run the even-SI second-player
    policy on what remains."""

    name = StrategyId.THM4_FIRST.value

    def choose(self, state, memory):
        self._require_turn(state)
        if not memory.opened:
            cid = _lowest_unresolved(state, self.si_pool)
            return (ChosenMove(Move(cid, CrossingState.RESOLVED_A),
                               "opening SI move"),
                    replace(memory, opened=True))
        return super().choose(state, memory)


class Thm6LinkerSecond(Policy):
    """The linking-number ladder on any two-component shadow with evenly
    many SIs and at least one NSI.

    SI moves are echoed on SIs.  The first NSI response copies the
    opponent's crossing sign (driving the pseudo-linking number to +-1);
    every later NSI response opposes it, holding |plk| = 1 to the end.
    """

    name = StrategyId.THM6_LINKER_SECOND.value

    def __init__(self, config, role):
        super().__init__(config, role)
        shadow = config.shadow
        self.si_pool = [cid for cid in shadow.crossing_ids
                        if classify_crossing(shadow, cid) == "SI"]
        self.nsi_pool = [cid for cid in shadow.crossing_ids
                         if classify_crossing(shadow, cid) == "NSI"]

    def _respond_nsi(self, state, memory, last):
        sign = crossing_sign(state.diagram, state.orientation, last.crossing)
        if not memory.first_nsi_done:
            target, tag = sign, "copy sign (plk to +-1)"
            memory = replace(memory, first_nsi_done=True)
        else:
            target, tag = -sign, "oppose sign (hold |plk| = 1)"
        cid = _lowest_unresolved(state, self.nsi_pool)
        res = resolution_for_sign(state.diagram, state.orientation, cid, target)
        return ChosenMove(Move(cid, res), f"NSI response: {tag}"), memory

    def choose(self, state, memory):
        self._require_turn(state)
        last = state.last_move()
        if classify_crossing(state.diagram, last.crossing) == "SI":
            cid = _lowest_unresolved(state, self.si_pool)
            return (ChosenMove(Move(cid, CrossingState.RESOLVED_A),
                               "SI pairing response"), memory)
        return self._respond_nsi(state, memory, last)


class Thm6LinkerFirst(Thm6LinkerSecond):
    """Odd SI count: open on an SI, then run the ladder as second."""

    name = StrategyId.THM6_LINKER_FIRST.value

    def choose(self, state, memory):
        self._require_turn(state)
        if not memory.opened:
            cid = _lowest_unresolved(state, self.si_pool)
            return (ChosenMove(Move(cid, CrossingState.RESOLVED_A),
                               "opening SI move"),
                    replace(memory, opened=True))
        return super().choose(state, memory)


# ---------------------------------------------------------------------------
# Applicability and dispatch
# ---------------------------------------------------------------------------


def _word_of_config(config: GameConfig) -> Optional[PseudoTangleWord]:
    sizes = shadow_sizes(config)
    if sizes is None:
        return None
    from .words import shadow_word

    return shadow_word(sizes)


def applicable_strategies(config: GameConfig) -> list[StrategyId]:
    """Every strategy whose hypothesis (and seating) fits the config."""
    out = []
    shadow = config.shadow
    word = _word_of_config(config)
    if word is not None:
        sizes = word.sizes
        n = len(sizes)
        odd_positions = sizes[0::2]
        if all(s == 0 for s in odd_positions):
            out.append(StrategyId.THM1_UNLINKER_ALWAYS)
        else:
            if all(s % 2 == 0 for s in sizes):
                out.append(StrategyId.THM1_2_SECOND)
            if n == 2 and sizes[0] % 2 == 1 and sizes[1] % 2 == 1:
                out.append(StrategyId.THM2_SECOND)
            if (n >= 3 and sizes[0] % 2 == 1 and sizes[-1] % 2 == 1
                    and all(s % 2 == 0 for s in sizes[1:-1])):
                out.append(StrategyId.THM3_SECOND)
            from .words import count_intersections

            _, si = count_intersections(word)
            out.append(StrategyId.THM4_SECOND if si % 2 == 0
                       else StrategyId.THM4_FIRST)
    nsi_count = len(shadow.nsi_ids())
    si_count = len(shadow.si_ids())
    if nsi_count >= 2:
        if si_count % 2 == 0 and config.first_mover == Role.UNLINKER:
            out.append(StrategyId.THM6_LINKER_SECOND)
        if si_count % 2 == 1 and config.first_mover == Role.LINKER:
            out.append(StrategyId.THM6_LINKER_FIRST)
    return out


def policy_for(strategy: Union[StrategyId, str, Policy],
               config: GameConfig) -> Policy:
    """Bind a strategy id to a config, checking its hypothesis."""
    if isinstance(strategy, Policy):
        return strategy
    strategy = StrategyId(strategy)
    word = _word_of_config(config)
    second = Role.other(config.first_mover)

    def need_word() -> PseudoTangleWord:
        if word is None:
            raise InapplicableStrategy(
                f"{strategy.value} needs a rational shadow")
        return word

    if strategy is StrategyId.THM1_UNLINKER_ALWAYS:
        sizes = need_word().sizes
        if any(sizes[0::2]):
            raise InapplicableStrategy("some bottom block is nonempty")
        return Thm1UnlinkerAlways(config, Role.UNLINKER)
    if strategy is StrategyId.THM1_2_SECOND:
        sizes = need_word().sizes
        if not all(s % 2 == 0 for s in sizes) or not any(sizes[0::2]):
            raise InapplicableStrategy("needs all-even sizes with a nonempty "
                                       "odd-position syllable")
        return Thm1_2Second(config, second, sizes)
    if strategy is StrategyId.THM2_SECOND:
        sizes = need_word().sizes
        if len(sizes) != 2 or sizes[0] % 2 == 0 or sizes[1] % 2 == 0:
            raise InapplicableStrategy("needs exactly two odd syllables")
        return Thm2Second(config, second, sizes)
    if strategy is StrategyId.THM3_SECOND:
        sizes = need_word().sizes
        if (len(sizes) < 3 or sizes[0] % 2 == 0 or sizes[-1] % 2 == 0
                or any(s % 2 for s in sizes[1:-1])):
            raise InapplicableStrategy("needs odd ends around even middles")
        return Thm3Second(config, second, sizes)
    if strategy in (StrategyId.THM4_SECOND, StrategyId.THM4_FIRST):
        w = need_word()
        from .words import count_intersections

        _, si = count_intersections(w)
        if strategy is StrategyId.THM4_SECOND:
            if si % 2 == 1:
                raise InapplicableStrategy("SI count is odd")
            return Thm4Second(config, second, w)
        if si % 2 == 0:
            raise InapplicableStrategy("SI count is even")
        return Thm4First(config, config.first_mover, w)
    if strategy is StrategyId.THM6_LINKER_SECOND:
        if len(config.shadow.nsi_ids()) == 0:
            raise InapplicableStrategy("no NSIs to link through")
        if len(config.shadow.si_ids()) % 2 == 1:
            raise InapplicableStrategy("SI count is odd")
        if config.first_mover != Role.UNLINKER:
            raise InapplicableStrategy("the Linker must be second here")
        return Thm6LinkerSecond(config, Role.LINKER)
    if strategy is StrategyId.THM6_LINKER_FIRST:
        if len(config.shadow.nsi_ids()) == 0:
            raise InapplicableStrategy("no NSIs to link through")
        if len(config.shadow.si_ids()) % 2 == 0:
            raise InapplicableStrategy("SI count is even")
        if config.first_mover != Role.LINKER:
            raise InapplicableStrategy("the Linker must be first here")
        return Thm6LinkerFirst(config, Role.LINKER)
    raise InapplicableStrategy(f"unknown strategy {strategy!r}")


def initial_memory(strategy, config: GameConfig,
                   state: GameState) -> StrategyMemory:
    return policy_for(strategy, config).initial_memory(state)


def choose_move(strategy, state: GameState,
                memory: StrategyMemory) -> tuple[ChosenMove, StrategyMemory]:
    """Dispatch one move of the given strategy; see the policy classes."""
    policy = policy_for(strategy, state.config)
    return policy.choose(state, memory)
