"""Perfect-play solving: anchors, abstraction soundness, memo/order
robustness, kernel backend parity, and principal variations."""

import itertools

import pytest

from linkgame import kernels
from linkgame.construct import two_component_shadow, whitehead_shadow
from linkgame.game import GameConfig, Role, game_outcome, new_game, apply_move
from linkgame.generate import strip_provenance
from linkgame.solver import (
    FIRST_MOVER,
    SECOND_MOVER,
    UNDETERMINED,
    solve_diagram,
    solve_rational,
)
from linkgame.words import ClosureKind, shadow_word


def test_thm2_anchor_11_numerator():
    r = solve_rational(shadow_word([1, 1]), closure=ClosureKind.NUMERATOR,
                       first_mover=Role.UNLINKER)
    assert r.winner == SECOND_MOVER
    assert r.winning_role == Role.LINKER


def test_thm1_anchor_03_unlinker_always():
    for first in (Role.UNLINKER, Role.LINKER):
        r = solve_rational(shadow_word([0, 3]), first_mover=first)
        assert r.winning_role == Role.UNLINKER


def test_thm1_anchor_2_second_mover():
    r = solve_rational(shadow_word([2]), first_mover=Role.LINKER)
    assert r.winner == SECOND_MOVER and r.winning_role == Role.UNLINKER
    r = solve_rational(shadow_word([2]), first_mover=Role.UNLINKER)
    assert r.winner == SECOND_MOVER and r.winning_role == Role.LINKER


def test_2_anchor_matches_brute_force():
    """Brute force over all 8 playouts of the two-crossing game: under
    either role assignment the second mover has a winning reply to every
    first move, confirming the solver's second-mover verdict."""
    shadow = two_component_shadow(shadow_word([2]))
    from linkgame.game import legal_moves, replay

    for first in (Role.UNLINKER, Role.LINKER):
        config = GameConfig(shadow=shadow, first_mover=first)
        second = Role.other(first)
        playouts = 0
        for m1 in legal_moves(new_game(config)):
            s1 = apply_move(new_game(config), m1)
            replies = [replay(config, [m1, m2]).winner
                       for m2 in legal_moves(s1)]
            playouts += len(replies)
            assert second in replies, (first, str(m1))
        assert playouts == 8
        assert solve_rational(shadow_word([2]),
                              first_mover=first).winner == SECOND_MOVER


def test_solve_rational_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_rational(shadow_word([1]))  # no 2-component closure
    with pytest.raises(ValueError):
        solve_rational(shadow_word([2]), closure=ClosureKind.NUMERATOR)
    from linkgame.words import word

    with pytest.raises(ValueError):
        solve_rational(word((2,)))  # resolved, not a shadow


def test_solve_diagram_matches_rational_small():
    for sizes in [(1, 1), (2,), (2, 1, 2), (0, 3), (2, 2)]:
        shadow = two_component_shadow(shadow_word(sizes))
        for first in (Role.UNLINKER, Role.LINKER):
            a = solve_rational(shadow_word(sizes), first_mover=first)
            b = solve_diagram(GameConfig(shadow=shadow, first_mover=first))
            assert (a.winner, a.winning_role) == (b.winner, b.winning_role)


def test_solve_diagram_general_whitehead_linker_first():
    """Stripping provenance forces the three-valued general solver; the
    Linker moving first still wins, with every optimal leaf at |lk| = 1."""
    shadow = strip_provenance(whitehead_shadow())
    r = solve_diagram(GameConfig(shadow=shadow, first_mover=Role.LINKER))
    assert r.winning_role == Role.LINKER
    assert r.winner == FIRST_MOVER


def test_solve_diagram_zero_crossing():
    from linkgame.construct import build_rational_shadow

    shadow = build_rational_shadow(shadow_word([0]), ClosureKind.DENOMINATOR)
    for first in (Role.UNLINKER, Role.LINKER):
        r = solve_diagram(GameConfig(shadow=shadow, first_mover=first))
        assert r.winning_role == Role.UNLINKER
        assert r.pv == ()


def test_solve_diagram_bound():
    shadow = two_component_shadow(shadow_word([4, 1, 4]))
    with pytest.raises(ValueError, match="exceed"):
        solve_diagram(GameConfig(shadow=shadow), max_crossings=5)


def test_pv_replays_to_matching_outcome():
    for sizes in [(2,), (1, 1), (2, 1, 2), (3, 1), (2, 2)]:
        for first in (Role.UNLINKER, Role.LINKER):
            shadow = two_component_shadow(shadow_word(sizes))
            config = GameConfig(shadow=shadow, first_mover=first)
            r = solve_diagram(config)
            state = new_game(config)
            for move in r.pv:
                state = apply_move(state, move)
            assert state.terminal
            assert game_outcome(state).winner == r.winning_role
            # the abstract solver's pv agrees with builder crossing ids
            ra = solve_rational(shadow_word(sizes), first_mover=first)
            state = new_game(config)
            for move in ra.pv:
                state = apply_move(state, move)
            assert game_outcome(state).winner == ra.winning_role


def test_memo_and_ordering_do_not_change_winners():
    for sizes in [(2, 1, 2), (3, 1), (2, 2), (1, 2, 1)]:
        for first in (Role.UNLINKER, Role.LINKER):
            base = solve_rational(shadow_word(sizes), first_mover=first)
            no_memo = solve_rational(shadow_word(sizes), first_mover=first,
                                     use_memo=False)
            no_order = solve_rational(shadow_word(sizes), first_mover=first,
                                      order_moves=False)
            assert base.winning_role == no_memo.winning_role == no_order.winning_role
            assert no_memo.tt_hits == 0


def test_search_depth_equals_remaining_unresolved():
    """Monotone progress: every pv prefix shortens the unresolved set by
    one per ply."""
    shadow = two_component_shadow(shadow_word([2, 1, 2]))
    config = GameConfig(shadow=shadow, first_mover=Role.LINKER)
    r = solve_diagram(config)
    state = new_game(config)
    remaining = len(state.diagram.unresolved_ids())
    for move in r.pv:
        state = apply_move(state, move)
        remaining -= 1
        assert len(state.diagram.unresolved_ids()) == remaining
    assert remaining == 0


def test_backend_parity_when_compiled_available():
    available = kernels.backends()
    if "compiled" not in available:
        pytest.skip("compiled kernel not built")
    pure, comp = available["python"], available["compiled"]
    for n in range(1, 4):
        for sizes in itertools.product(range(0, 4), repeat=n):
            for first in (True, False):
                a = pure.solve_sizes(sizes, first)
                b = comp.solve_sizes(sizes, first)
                assert a[0] == b[0] and a[3] == b[3], (sizes, first)
    for sizes in [(1, 1), (2, 1, 2), (0, 3)]:
        syl = tuple(i for i, b in enumerate(sizes) for _ in range(b))
        init = (0,) * len(syl)
        for first in (True, False):
            a = pure.solve_concrete(syl, len(sizes), init, first)
            b = comp.solve_concrete(syl, len(sizes), init, first)
            assert a[0] == b[0] and a[3] == b[3]


def test_fraction_kernel_examples():
    for backend in kernels.backends().values():
        p, q = backend.fraction_nets((2, -3, -2, 1))
        from math import gcd

        g = gcd(abs(p), abs(q))
        assert (abs(p) // g, abs(q) // g) == (7, 12)
        assert backend.splittable_nets((0,))
        assert backend.splittable_nets((1, -1))
        assert not backend.splittable_nets((2,))
        assert backend.all_terminals_splittable((0, 3))
        assert not backend.all_terminals_splittable((2,))
