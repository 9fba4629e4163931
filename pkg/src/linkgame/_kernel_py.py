"""Pure-Python solver kernels.

The compiled extension (linkgame._kernel) implements the same interface;
linkgame.kernels picks between them at import time.  Both operate on the
syllable abstraction of rational game shadows: a state is the per-
syllable (net, unresolved) table, a move decrements one unresolved count
and shifts that net by +-1, and a finished game is splittable exactly
when the fraction of the net word is 0 or infinity.
"""

from __future__ import annotations

from typing import Optional

BACKEND = "python"


def fraction_nets(nets) -> tuple[int, int]:
    """Unreduced (p, q) fraction of a fully resolved net word.

    Starts at infinity = (1, 0); odd (1-indexed) positions apply
    f -> 1/(net + 1/f), even positions f -> f + net.
    """
    p, q = 1, 0
    for i, net in enumerate(nets):
        if i % 2 == 0:
            q = net * p + q
        else:
            p = p + net * q
    return p, q


def splittable_nets(nets) -> bool:
    p, q = fraction_nets(nets)
    return p == 0 or q == 0


def all_terminals_splittable(sizes) -> bool:
    """Whether every resolution of the all-unresolved word is splittable.

    Resolutions sharing per-syllable nets share a verdict, so it
    suffices to range over reachable net vectors.
    """
    choices = [range(-b, b + 1, 2) for b in sizes]

    def rec(i, nets):
        if i == len(choices):
            return splittable_nets(nets)
        return all(rec(i + 1, nets + (c,)) for c in choices[i])

    return rec(0, ())


class RationalSolver:
    """Memoized minimax over syllable-abstracted states."""

    def __init__(self, sizes, use_memo: bool = True, order_moves: bool = True):
        self.sizes = tuple(sizes)
        self.use_memo = use_memo
        self.order_moves = order_moves
        self.memo: dict = {}
        self.nodes = 0
        self.tt_hits = 0

    def unlinker_wins(self, nets, unres, mover_is_unlinker, last_delta=0) -> bool:
        key = (nets, unres, mover_is_unlinker)
        if self.use_memo:
            cached = self.memo.get(key)
            if cached is not None:
                self.tt_hits += 1
                return cached
        self.nodes += 1
        if not any(unres):
            result = splittable_nets(nets)
        else:
            if self.order_moves:
                # linker prefers repeating the last sign (clasp-forming),
                # unlinker prefers opposing it; ordering is a traversal
                # heuristic only and cannot change the minimax value
                if mover_is_unlinker:
                    deltas = (-last_delta, last_delta) if last_delta else (1, -1)
                else:
                    deltas = (last_delta, -last_delta) if last_delta else (1, -1)
            else:
                deltas = (1, -1)
            result = not mover_is_unlinker
            for i in range(len(self.sizes)):
                if unres[i] == 0:
                    continue
                child_unres = unres[:i] + (unres[i] - 1,) + unres[i + 1:]
                for delta in deltas:
                    child_nets = nets[:i] + (nets[i] + delta,) + nets[i + 1:]
                    child = self.unlinker_wins(
                        child_nets, child_unres, not mover_is_unlinker, delta)
                    if child == mover_is_unlinker:
                        result = child
                        break
                if result == mover_is_unlinker:
                    break
        if self.use_memo:
            self.memo[key] = result
        return result

    def principal_variation(self, first_is_unlinker) -> list[tuple[int, int]]:
        """Deterministic optimal line: lowest syllable first, +1 before -1.

        A winning mover has a value-preserving child; a losing mover's
        children all preserve the value, so the first value-preserving
        child is always a correct pick.
        """
        nets = (0,) * len(self.sizes)
        unres = self.sizes
        mover = first_is_unlinker
        target = self.unlinker_wins(nets, unres, mover)
        pv = []
        while any(unres):
            for i in range(len(self.sizes)):
                if unres[i] == 0:
                    continue
                child_unres = unres[:i] + (unres[i] - 1,) + unres[i + 1:]
                found = False
                for delta in (1, -1):
                    child_nets = nets[:i] + (nets[i] + delta,) + nets[i + 1:]
                    if self.unlinker_wins(child_nets, child_unres,
                                          not mover) == target:
                        pv.append((i, delta))
                        nets, unres = child_nets, child_unres
                        found = True
                        break
                if found:
                    break
            else:
                raise AssertionError("no value-preserving move found")
            mover = not mover
        return pv


def solve_sizes(sizes, first_is_unlinker: bool,
                use_memo: bool = True, order_moves: bool = True):
    """Returns (unlinker_wins, nodes, tt_hits, pv) for the all-unresolved
    rational shadow with the given syllable sizes."""
    solver = RationalSolver(sizes, use_memo, order_moves)
    nets = (0,) * len(sizes)
    win = solver.unlinker_wins(nets, tuple(sizes), first_is_unlinker)
    pv = solver.principal_variation(first_is_unlinker) if use_memo else ()
    return win, solver.nodes, solver.tt_hits, tuple(pv)


class ConcreteRationalSolver:
    """Minimax over concrete resolution vectors of a built rational shadow.

    States distinguish which crossing of a syllable carries which
    resolution, which is exactly what the syllable abstraction forgets;
    agreement between the two solvers validates the abstraction.
    """

    def __init__(self, syllable_of, n_syllables: int, use_memo: bool = True):
        self.syllable_of = tuple(syllable_of)  # 0-based syllable per crossing
        self.n_syllables = n_syllables
        self.use_memo = use_memo
        self.memo: dict = {}
        self.nodes = 0
        self.tt_hits = 0

    def _terminal_splittable(self, trits) -> bool:
        nets = [0] * self.n_syllables
        for c, t in enumerate(trits):
            nets[self.syllable_of[c]] += 1 if t == 1 else -1
        return splittable_nets(tuple(nets))

    def unlinker_wins(self, trits, mover_is_unlinker) -> bool:
        key = (trits, mover_is_unlinker)
        if self.use_memo:
            cached = self.memo.get(key)
            if cached is not None:
                self.tt_hits += 1
                return cached
        self.nodes += 1
        if 0 not in trits:
            result = self._terminal_splittable(trits)
        else:
            result = not mover_is_unlinker
            for c, t in enumerate(trits):
                if t != 0:
                    continue
                for choice in (1, 2):
                    child = trits[:c] + (choice,) + trits[c + 1:]
                    value = self.unlinker_wins(child, not mover_is_unlinker)
                    if value == mover_is_unlinker:
                        result = value
                        break
                if result == mover_is_unlinker:
                    break
        if self.use_memo:
            self.memo[key] = result
        return result

    def principal_variation(self, trits, first_is_unlinker):
        mover = first_is_unlinker
        target = self.unlinker_wins(trits, mover)
        pv = []
        while 0 in trits:
            advanced = False
            for c, t in enumerate(trits):
                if t != 0:
                    continue
                for choice in (1, 2):
                    child = trits[:c] + (choice,) + trits[c + 1:]
                    if self.unlinker_wins(child, not mover) == target:
                        pv.append((c, choice))
                        trits = child
                        advanced = True
                        break
                if advanced:
                    break
            if not advanced:
                raise AssertionError("no value-preserving move found")
            mover = not mover
        return pv


def solve_concrete(syllable_of, n_syllables: int, initial_trits,
                   mover_is_unlinker: bool, use_memo: bool = True):
    """Returns (unlinker_wins, nodes, tt_hits, pv) where moves in pv are
    (crossing index, trit) with trit 1 = positive slope, 2 = negative."""
    solver = ConcreteRationalSolver(syllable_of, n_syllables, use_memo)
    trits = tuple(initial_trits)
    win = solver.unlinker_wins(trits, mover_is_unlinker)
    pv = solver.principal_variation(trits, mover_is_unlinker) if use_memo else ()
    return win, solver.nodes, solver.tt_hits, tuple(pv)
