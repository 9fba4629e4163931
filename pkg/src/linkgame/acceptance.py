"""The acceptance sweep: every gate criterion as a runnable check.

Each criterion returns a CriterionResult with a pass flag, the elapsed
time against its stated limit, and a human-readable detail line.  The
test suite and the ``linkgame sweep`` command both run these.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import kernels
from .construct import hopf_shadow, two_component_shadow, whitehead_shadow
from .diagram import (
    CrossingState,
    canonical_orientation,
    classify_crossing,
    pseudo_linking_number,
    resolution_for_sign,
)
from .game import GameConfig, Move, Role, replay
from .generate import random_link_shadow
from .simplify import decide_splittability, replay_trace
from .solver import (
    FIRST_MOVER,
    SECOND_MOVER,
    solve_diagram,
    solve_rational,
    verify_strategy,
)
from .strategies import StrategyId, applicable_strategies
from .words import (
    closure_components,
    count_intersections,
    decompose_word,
    parse_word,
    rational_splittability,
    shadow_word,
    word,
)

DECOMP_WORD = "(1,4,2,1,3,5,3,2,1,2,0,5,2,6,4)"
DECOMP_STARRED = "(1,4,2,1,3*,5,3,2*,1,2,0,5,2*,6,4*)"

A = CrossingState.RESOLVED_A
B = CrossingState.RESOLVED_B


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    elapsed: float
    limit: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"C{self.number:02d} {status} [{self.elapsed:6.2f}s / "
                f"limit {self.limit:g}s] {self.name}: {self.detail}")


def _sized_words(max_len: int, max_size: int):
    for n in range(1, max_len + 1):
        yield from itertools.product(range(0, max_size + 1), repeat=n)


def _resolve_all(diagram, states):
    for cid, st in zip(diagram.crossing_ids, states):
        diagram = diagram.with_state(cid, st)
    return diagram


# --- criterion bodies -------------------------------------------------------


def _c1_decomposition_golden():
    d = decompose_word(parse_word(DECOMP_WORD))
    ok = (d.si_positions == (5, 8, 13, 15)
          and d.starred() == DECOMP_STARRED)
    return ok, f"stars at {d.si_positions}, rendering {d.starred()}"


def _c2_lemma_anchors():
    checks = [
        rational_splittability(word("(0)")).is_splittable,
        rational_splittability(word((2,))).is_unsplittable,
        rational_splittability(word((-2,))).is_unsplittable,
    ]
    hopf = _resolve_all(hopf_shadow(), (A, A))
    verdict = decide_splittability(hopf)
    checks.append(verdict.is_unsplittable)
    checks.append(abs(verdict.certificate) == 1)
    return all(checks), (f"(0) splittable, (+-2) unsplittable, Hopf diagram "
                         f"|lk| = {abs(verdict.certificate)}")


def _oriented_example_diagram():
    """Reconstruct the five-crossing oriented example: one SI of sign -1
    plus non-self-intersections signed (-1, -1, -1, +1)."""
    shadow = whitehead_shadow()
    orientation = canonical_orientation(shadow)
    targets = {0: -1, 1: -1, 3: -1, 4: 1, 2: -1}
    d = shadow
    for cid, sign in targets.items():
        d = d.with_state(cid, resolution_for_sign(d, orientation, cid, sign))
    return d, orientation


def _whitehead_resolution():
    """The unsplittable lk-0 resolution of the Whitehead shadow: one
    twist region's pair negative, the other positive, and the self-
    intersection resolved so the closure stays a nontrivial link."""
    shadow = whitehead_shadow()
    orientation = canonical_orientation(shadow)
    targets = {0: -1, 1: -1, 3: 1, 4: 1}
    d = shadow
    for cid, sign in targets.items():
        d = d.with_state(cid, resolution_for_sign(d, orientation, cid, sign))
    candidates = []
    for st in (A, B):
        full = d.with_state(2, st)
        from .game import GameState, new_game

        nets = []
        for syl in (1, 2, 3):
            net = sum(1 if full.crossing_by_id[c.id].state is A else -1
                      for c in full.crossings if c.syllable == syl)
            nets.append(net)
        if rational_splittability(word(tuple(nets))).is_unsplittable:
            candidates.append(full)
    assert len(candidates) == 1, "exactly one SI choice keeps the link nontrivial"
    return candidates[0], orientation


def _c3_linking_number_figures():
    d, orientation = _oriented_example_diagram()
    lk_example = pseudo_linking_number(d, orientation)
    wh, worient = _whitehead_resolution()
    lk_wh = pseudo_linking_number(wh, worient)
    verdict = decide_splittability(wh)
    ok = (lk_example == Fraction(-1) and lk_wh == 0 and verdict.is_unknown)
    return ok, (f"oriented example lk = {lk_example}, Whitehead lk = {lk_wh}, "
                f"verdict {verdict}")


def worked_game_moves() -> list[Move]:
    """The worked example on the Whitehead shadow: the Unlinker opens on
    the central self-intersection, then answers each of the Linker's
    twist-region moves with the opposite slope (an R2 response)."""
    return [Move(2, A),   # Unlinker: central SI
            Move(0, A),   # Linker: first left-region crossing
            Move(1, B),   # Unlinker: R2 response on the left region
            Move(3, A),   # Linker: first right-region crossing
            Move(4, B)]   # Unlinker: R2 response on the right region


def _c4_worked_game_replay():
    config = GameConfig(shadow=whitehead_shadow(), first_mover=Role.UNLINKER)
    outcome = replay(config, worked_game_moves())
    final = whitehead_shadow()
    for move in worked_game_moves():
        final = final.with_state(move.crossing, move.resolution)
    verdict = decide_splittability(final, budget=10_000)
    replayed = (replay_trace(final, verdict.certificate).is_split()
                if verdict.is_splittable else False)
    ok = (outcome.winner == Role.UNLINKER and verdict.is_splittable
          and replayed)
    return ok, (f"winner {outcome.winner}, diagram verdict {verdict} "
                f"({verdict.detail}), trace replays to split: {replayed}")


def _c5_parity(progress=None):
    violations = []
    n_words = 0
    for sizes in _sized_words(4, 3):
        w = shadow_word(sizes)
        nsi, _ = count_intersections(w)
        _, closure = closure_components(w)
        if (nsi % 2 == 0) != (closure is not None):
            violations.append(("word", sizes))
        n_words += 1
    rng = random.Random(20260810)
    for k in range(1000):
        d = random_link_shadow(rng, rng.randint(2, 10))
        if d.n_components != 2 or len(d.nsi_ids()) % 2 != 0:
            violations.append(("diagram", k))
    ok = not violations
    return ok, (f"{n_words} words + 1000 generated diagrams, "
                f"{len(violations)} violations")


def _c6_theorem2_sweep():
    mismatches = []
    solves = 0
    for a1 in (-5, -3, -1, 1, 3, 5):
        for a2 in (-5, -3, -1, 1, 3, 5):
            w = shadow_word((abs(a1), abs(a2)))
            for first in (Role.UNLINKER, Role.LINKER):
                r = solve_rational(w, first_mover=first)
                solves += 1
                if r.winner != SECOND_MOVER:
                    mismatches.append(((a1, a2), first, r.winner))
    return not mismatches, f"{solves} solves, {len(mismatches)} mismatches"


def criterion7_family():
    """Shadows of words with even NSI count, n <= 3, sizes <= 3, at
    least one NSI crossing, excluding the all-odd-position-zero family
    (criterion 8 covers it)."""
    family = []
    for sizes in _sized_words(3, 3):
        w = shadow_word(sizes)
        nsi, si = count_intersections(w)
        _, closure = closure_components(w)
        if closure is None or nsi == 0:
            continue
        if all(s == 0 for s in sizes[0::2]):
            continue
        family.append((sizes, nsi, si))
    return family


def _c7_theorem_1_3_4_sweep():
    mismatches = []
    solves = 0
    for sizes, _nsi, si in criterion7_family():
        expected = SECOND_MOVER if si % 2 == 0 else FIRST_MOVER
        for first in (Role.UNLINKER, Role.LINKER):
            r = solve_rational(shadow_word(sizes), first_mover=first)
            solves += 1
            if r.winner != expected:
                mismatches.append((sizes, first, r.winner, expected))
    detail = f"{solves} solves, {len(mismatches)} mismatches"
    if mismatches:
        detail += f"; first: {mismatches[0]}"
    return not mismatches, detail


def criterion8_family():
    family = []
    for sizes in _sized_words(4, 4):
        if all(s == 0 for s in sizes[0::2]):
            family.append(sizes)
    return family


def _c8_theorem1_degenerate():
    violations = []
    checked = 0
    for sizes in criterion8_family():
        if not kernels.all_terminals_splittable(sizes):
            violations.append(("terminal", sizes))
        for first in (Role.UNLINKER, Role.LINKER):
            r = solve_rational(shadow_word(sizes), first_mover=first)
            checked += 1
            if r.winning_role != Role.UNLINKER:
                violations.append(("oracle", sizes, first))
    return not violations, (f"{checked} solves over {len(criterion8_family())} "
                            f"words, {len(violations)} violations")


def _plk_ladder_check(state, mover_was_strategy):
    """After every strategy move that resolves an NSI (beyond the SI
    opener), the pseudo-linking number must sit at +-1."""
    if not mover_was_strategy:
        return None
    move = state.history[-1]
    if classify_crossing(state.diagram, move.crossing) != "NSI":
        return None
    if abs(state.plk) != 1:
        return (f"|plk| = {state.plk} after strategy NSI move "
                f"{move} (history {[str(m) for m in state.history]})")
    return None


def _c9_strategy_verification(progress: Optional[Callable] = None):
    failures = []
    reports = 0

    def run(strategy, config, desc, line_check=None):
        nonlocal reports
        report = verify_strategy(strategy, config, line_check=line_check,
                                 config_desc=desc)
        reports += 1
        if not report.ok:
            failures.append(report.summary())
        if progress:
            progress(report.summary())

    for sizes, _nsi, _si in criterion7_family():
        shadow = two_component_shadow(shadow_word(sizes))
        for first in (Role.UNLINKER, Role.LINKER):
            config = GameConfig(shadow=shadow, first_mover=first)
            for strategy in applicable_strategies(config):
                check = (_plk_ladder_check
                         if strategy in (StrategyId.THM6_LINKER_SECOND,
                                         StrategyId.THM6_LINKER_FIRST)
                         else None)
                run(strategy, config, f"sizes {sizes} first={first}", check)

    for sizes in criterion8_family():
        if sum(sizes) == 0:
            continue
        shadow = two_component_shadow(shadow_word(sizes))
        for first in (Role.UNLINKER, Role.LINKER):
            config = GameConfig(shadow=shadow, first_mover=first)
            run(StrategyId.THM1_UNLINKER_ALWAYS, config,
                f"degenerate {sizes} first={first}")

    config = GameConfig(shadow=whitehead_shadow(), first_mover=Role.LINKER)
    run(StrategyId.THM6_LINKER_FIRST, config, "whitehead", _plk_ladder_check)

    rng = random.Random(97)
    generated = 0
    while generated < 24:
        d = random_link_shadow(rng, rng.randint(4, 8))
        if len(d.nsi_ids()) < 2:
            continue
        generated += 1
        si_parity = len(d.si_ids()) % 2
        if si_parity == 0:
            config = GameConfig(shadow=d, first_mover=Role.UNLINKER)
            run(StrategyId.THM6_LINKER_SECOND, config,
                f"generated #{generated} ({d.n_crossings} crossings)",
                _plk_ladder_check)
        else:
            config = GameConfig(shadow=d, first_mover=Role.LINKER)
            run(StrategyId.THM6_LINKER_FIRST, config,
                f"generated #{generated} ({d.n_crossings} crossings)",
                _plk_ladder_check)
    detail = f"{reports} strategy/config pairs, {len(failures)} failures"
    if failures:
        detail += "; " + failures[0]
    return not failures, detail


def crossvalidation_family(max_crossings: int = 6):
    for n in range(1, 5):
        for sizes in itertools.product(range(0, max_crossings + 1), repeat=n):
            if sum(sizes) > max_crossings:
                continue
            w = shadow_word(sizes)
            _, closure = closure_components(w)
            if closure is None:
                continue
            yield sizes


def _c10_oracle_crossvalidation():
    mismatches = []
    solves = 0
    for sizes in crossvalidation_family(6):
        w = shadow_word(sizes)
        shadow = two_component_shadow(w)
        for first in (Role.UNLINKER, Role.LINKER):
            a = solve_rational(w, first_mover=first)
            b = solve_diagram(GameConfig(shadow=shadow, first_mover=first))
            solves += 2
            if (a.winner, a.winning_role) != (b.winner, b.winning_role):
                mismatches.append((sizes, first, a.winner, b.winner))
    return not mismatches, f"{solves} solves, {len(mismatches)} mismatches"


def resolved_word_family(max_crossings: int = 6, max_len: int = 4):
    for n in range(1, max_len + 1):
        for nets in itertools.product(
                range(-max_crossings, max_crossings + 1), repeat=n):
            if sum(abs(a) for a in nets) > max_crossings:
                continue
            yield nets


def _c11_fraction_validation():
    mismatches = []
    checked_reduce = checked_diagram = 0
    for nets in resolved_word_family(6, 4):
        w = word(nets)
        _, closure = closure_components(w)
        if closure is None:
            continue
        fraction_verdict = rational_splittability(w).is_splittable
        from .words import reduce_word

        reduced = reduce_word(w)
        if reduced.nets in ((0,), (2,), (-2,)):
            checked_reduce += 1
            reduce_splittable = reduced.nets == (0,)
            if reduce_splittable != fraction_verdict:
                mismatches.append(("reduce", nets))
        diagram = two_component_shadow(w)
        verdict = decide_splittability(diagram, budget=400)
        if not verdict.is_unknown:
            checked_diagram += 1
            if verdict.is_splittable != fraction_verdict:
                mismatches.append(("diagram", nets))
    return not mismatches, (f"{checked_reduce} reduction checks, "
                            f"{checked_diagram} diagram checks, "
                            f"{len(mismatches)} mismatches")


CRITERIA = [
    (1, "decomposition golden example", 1.0, _c1_decomposition_golden),
    (2, "splittability anchor cases", 1.0, _c2_lemma_anchors),
    (3, "linking-number figures", 1.0, _c3_linking_number_figures),
    (4, "worked game replay", 10.0, _c4_worked_game_replay),
    (5, "even-NSI parity families", 120.0, _c5_parity),
    (6, "two-odd-syllable sweep", 60.0, _c6_theorem2_sweep),
    (7, "second/first-mover sweep by SI parity", 300.0, _c7_theorem_1_3_4_sweep),
    (8, "degenerate always-splittable family", 60.0, _c8_theorem1_degenerate),
    (9, "strategy verification sweep", 600.0, _c9_strategy_verification),
    (10, "abstract/concrete oracle agreement", 120.0, _c10_oracle_crossvalidation),
    (11, "fraction validation", 120.0, _c11_fraction_validation),
]


def run_criterion(number: int) -> CriterionResult:
    entry = next(c for c in CRITERIA if c[0] == number)
    _, name, limit, body = entry
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok = False
        detail += f" (exceeded {limit:g}s limit)"
    return CriterionResult(number, name, ok, elapsed, limit, detail)


def run_all(numbers=None, progress: Optional[Callable] = print):
    results = []
    for number, _, _, _ in CRITERIA:
        if numbers and number not in numbers:
            continue
        result = run_criterion(number)
        if progress:
            progress(result.line())
        results.append(result)
    return results
