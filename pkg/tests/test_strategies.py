"""Strategy engine: applicability, twist-region responses, dispatch, and
exhaustive verification including a mutation test."""

import pytest

from linkgame.construct import two_component_shadow, whitehead_shadow
from linkgame.diagram import CrossingState, classify_crossing
from linkgame.game import GameConfig, Move, Role, apply_move, game_outcome, new_game
from linkgame.solver import verify_strategy
from linkgame.strategies import (
    ChosenMove,
    InapplicableStrategy,
    StrategyId,
    Thm6LinkerSecond,
    anti_r2_response,
    applicable_strategies,
    choose_move,
    initial_memory,
    policy_for,
    r2_response,
)
from linkgame.words import shadow_word, word

A = CrossingState.RESOLVED_A
B = CrossingState.RESOLVED_B


def config_for(sizes, first=Role.UNLINKER):
    return GameConfig(shadow=two_component_shadow(shadow_word(sizes)),
                      first_mover=first)


# --- applicability -----------------------------------------------------------

def test_applicable_2_m3_m2_1_thm4_second():
    cfg = config_for((2, 3, 2, 1))  # the (2,-3,-2,1) shadow
    ids = applicable_strategies(cfg)
    assert StrategyId.THM4_SECOND in ids


def test_applicable_whitehead_thm6_first():
    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.LINKER)
    assert StrategyId.THM6_LINKER_FIRST in applicable_strategies(cfg)
    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.UNLINKER)
    assert StrategyId.THM6_LINKER_FIRST not in applicable_strategies(cfg)


def test_applicable_04_thm1_unlinker():
    cfg = config_for((0, 4))
    assert applicable_strategies(cfg) == [StrategyId.THM1_UNLINKER_ALWAYS]


def test_applicable_families():
    assert StrategyId.THM1_2_SECOND in applicable_strategies(config_for((2, 2)))
    assert StrategyId.THM2_SECOND in applicable_strategies(config_for((1, 1)))
    assert StrategyId.THM3_SECOND in applicable_strategies(config_for((1, 2, 1)))
    assert StrategyId.THM4_FIRST in applicable_strategies(config_for((2, 1, 2)))


def test_policy_for_rejects_inapplicable():
    with pytest.raises(InapplicableStrategy):
        policy_for(StrategyId.THM2_SECOND, config_for((2, 2)))
    with pytest.raises(InapplicableStrategy):
        policy_for(StrategyId.THM6_LINKER_SECOND,
                   GameConfig(shadow=whitehead_shadow(),
                              first_mover=Role.UNLINKER))  # SI count odd


# --- twist-region responses ---------------------------------------------------

def test_r2_response_cancels_region_net():
    cfg = config_for((4,), first=Role.LINKER)
    state = new_game(cfg)
    state = apply_move(state, Move(0, A))
    move = r2_response(state, None, state.last_move())
    assert state.diagram.crossing_by_id[move.crossing].syllable == 1
    after = apply_move(state, move)
    assert after.plk == 0  # the pair cancels


def test_anti_r2_response_clasps():
    cfg = config_for((2,), first=Role.LINKER)
    state = new_game(cfg)
    state = apply_move(state, Move(0, B))
    move = anti_r2_response(state, None, state.last_move())
    after = apply_move(state, move)
    assert abs(after.plk) == 1


def test_region_response_error_when_exhausted():
    # the Whitehead's central SI is a singleton twist region
    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.LINKER)
    state = new_game(cfg)
    state = apply_move(state, Move(2, A))
    with pytest.raises(InapplicableStrategy):
        r2_response(state, None, state.last_move())


def test_r2_response_equals_opposite_slope_on_built_shadows():
    """Sign-based and slope-based responses coincide on builder output."""
    for sizes in [(4,), (2, 2), (2, 1, 2)]:
        cfg = config_for(sizes, first=Role.LINKER)
        for opening in (A, B):
            state = apply_move(new_game(cfg), Move(0, opening))
            move = r2_response(state, None, state.last_move())
            assert move.resolution is opening.flipped()


# --- dispatch ------------------------------------------------------------------

def test_thm2_second_unlinker_reaches_splittable():
    cfg = config_for((1, 1), first=Role.LINKER)
    state = new_game(cfg)
    memory = initial_memory(StrategyId.THM2_SECOND, cfg, state)
    state = apply_move(state, Move(0, A))
    chosen, memory = choose_move(StrategyId.THM2_SECOND, state, memory)
    state = apply_move(state, chosen.move)
    assert state.terminal
    assert game_outcome(state).winner == Role.UNLINKER
    # opposite slope turned (1, 1) into a (1, -1)-style completion
    from linkgame.game import resolved_word

    assert sorted(resolved_word(state).nets) == [-1, 1]


def test_thm4_first_opens_on_si():
    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.UNLINKER)
    state = new_game(cfg)
    memory = initial_memory(StrategyId.THM4_FIRST, cfg, state)
    chosen, _ = choose_move(StrategyId.THM4_FIRST, state, memory)
    assert classify_crossing(state.diagram, chosen.move.crossing) == "SI"
    assert "SI" in chosen.rationale


def test_thm6_first_response_copies_sign():
    cfg = GameConfig(shadow=two_component_shadow(shadow_word((2, 2))),
                     first_mover=Role.UNLINKER)
    state = new_game(cfg)
    memory = initial_memory(StrategyId.THM6_LINKER_SECOND, cfg, state)
    state = apply_move(state, Move(0, A))
    chosen, memory = choose_move(StrategyId.THM6_LINKER_SECOND, state, memory)
    after = apply_move(state, chosen.move)
    assert abs(after.plk) == 1
    assert memory.first_nsi_done


def test_choose_move_errors_out_of_turn():
    cfg = config_for((1, 1), first=Role.LINKER)
    state = new_game(cfg)
    memory = initial_memory(StrategyId.THM2_SECOND, cfg, state)
    with pytest.raises(InapplicableStrategy):
        choose_move(StrategyId.THM2_SECOND, state, memory)  # linker to move


# --- verification ----------------------------------------------------------------

def test_verify_thm2_on_31_no_losses():
    for first in (Role.UNLINKER, Role.LINKER):
        report = verify_strategy(StrategyId.THM2_SECOND,
                                 config_for((3, 1), first=first))
        assert report.ok
        assert report.lines_total == 32
        assert report.wins == 32


def test_verify_thm6_whitehead_plk_ladder():
    from linkgame.acceptance import _plk_ladder_check

    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.LINKER)
    report = verify_strategy(StrategyId.THM6_LINKER_FIRST, cfg,
                             line_check=_plk_ladder_check)
    assert report.ok
    assert report.lines_total == 32
    assert set(report.verdicts) == {"unsplittable"}


def test_verify_corrupted_thm6_loses():
    """Skipping the sign-copy step (always opposing) lets the Unlinker
    hold the linking number at zero."""

    class Corrupted(Thm6LinkerSecond):
        name = "Thm6-corrupted"

        def _respond_nsi(self, state, memory, last):
            from linkgame.diagram import crossing_sign, resolution_for_sign
            from linkgame.strategies import _lowest_unresolved

            sign = crossing_sign(state.diagram, state.orientation,
                                 last.crossing)
            cid = _lowest_unresolved(state, self.nsi_pool)
            res = resolution_for_sign(state.diagram, state.orientation,
                                      cid, -sign)
            return ChosenMove(Move(cid, res), "always oppose"), memory

    cfg = config_for((2,), first=Role.UNLINKER)
    policy = Corrupted(cfg, Role.LINKER)
    report = verify_strategy(policy, cfg)
    assert len(report.loss_lines) >= 1


def test_region_net_bookkeeping_at_game_end():
    """R2-responded syllables end with net 0; the designated anti-R2
    endgame leaves exactly one syllable at net +-2."""
    from linkgame.game import resolved_word

    def check_nets(linker_goal):
        def line_check(state, _was_strategy):
            if not state.terminal:
                return None
            nets = resolved_word(state).nets
            twos = [n for n in nets if abs(n) == 2]
            zeros = [n for n in nets if n == 0]
            if linker_goal:
                if len(twos) != 1 or len(zeros) != len(nets) - 1:
                    return f"bad terminal nets {nets}"
            else:
                if any(nets):
                    return f"bad terminal nets {nets}"
            return None
        return line_check

    shadow = two_component_shadow(shadow_word((2, 4)))
    linker_second = GameConfig(shadow=shadow, first_mover=Role.UNLINKER)
    report = verify_strategy(StrategyId.THM1_2_SECOND, linker_second,
                             line_check=check_nets(linker_goal=True))
    assert report.ok, report.summary()
    unlinker_second = GameConfig(shadow=shadow, first_mover=Role.LINKER)
    report = verify_strategy(StrategyId.THM1_2_SECOND, unlinker_second,
                             line_check=check_nets(linker_goal=False))
    assert report.ok, report.summary()


def test_choose_move_is_deterministic():
    cfg = GameConfig(shadow=whitehead_shadow(), first_mover=Role.LINKER)
    state = new_game(cfg)
    memory = initial_memory(StrategyId.THM6_LINKER_FIRST, cfg, state)
    first = choose_move(StrategyId.THM6_LINKER_FIRST, state, memory)
    second = choose_move(StrategyId.THM6_LINKER_FIRST, state, memory)
    assert first[0] == second[0]


def test_verify_marks_strategy_errors_as_losses():
    """A policy that raises mid-line is reported, not crashed on."""

    class Broken(Thm6LinkerSecond):
        name = "broken"

        def choose(self, state, memory):
            raise RuntimeError("boom")

    cfg = config_for((2,), first=Role.UNLINKER)
    report = verify_strategy(Broken(cfg, Role.LINKER), cfg)
    assert not report.ok
    assert all("<error" in line[-1] for line in report.loss_lines)
