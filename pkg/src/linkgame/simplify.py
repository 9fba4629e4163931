"""Reidemeister simplification and the budgeted splittability verdict.

R1 and R2 strictly decrease the crossing count and are applied greedily.
R3 is crossing-neutral; a bounded breadth-first search explores R3 moves
to unlock further R1/R2 reductions.  A two-component diagram is declared
split once no crossing joins the two components (a face boundary then
separates them), so reaching zero non-self-intersections certifies
splittability; a nonzero linking number certifies unsplittability; the
engine abstains otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import (
    Arc,
    CrossingState,
    End,
    FreeLoop,
    ShadowDiagram,
    pseudo_linking_number,
)
from .verdict import Verdict, splittable, unknown, unsplittable


@dataclass(frozen=True)
class SimplifyMove:
    kind: str                      # "r1" | "r2" | "r3"
    crossings: tuple[int, ...]
    slots: tuple[int, ...] = ()    # r3 records the triangle corner slots

    def __str__(self) -> str:
        return f"{self.kind} {','.join(map(str, self.crossings))}"


def _is_over(state: CrossingState, slot: int) -> bool:
    """Whether the strand through ``slot`` is the overstrand."""
    if not state.resolved:
        raise ValueError("crossing is unresolved")
    return (slot % 2 == 0) == (state is CrossingState.RESOLVED_A)


def smooth_out(diagram: ShadowDiagram, removed: set[int]) -> ShadowDiagram:
    """Delete crossings, letting both strands pass straight through.

    This realizes R1 and R2 removals (their preconditions are checked by
    the callers).  Chains that close up without meeting a surviving
    crossing become free loops.
    """
    survivors = [c for c in diagram.crossings if c.id not in removed]
    used_arcs: set[int] = set()
    new_arcs: list[Arc] = []
    new_loops = [FreeLoop(id=i, path=l.path)
                 for i, l in enumerate(diagram.free_loops)]

    def follow(end: End) -> tuple[Optional[End], list[int]]:
        """From an end, run through removed crossings until a surviving
        slot or a closed chain; returns (terminal end, arcs consumed)."""
        consumed = []
        e = end
        while True:
            arc = diagram.arc_at(e)
            consumed.append(arc.id)
            c, s = arc.ends[1] if arc.ends[0] == e else arc.ends[0]
            if c not in removed:
                return (c, s), consumed
            e = (c, (s + 2) % 4)
            if e == end:  # closed through the start
                return None, consumed

    next_arc_id = 0
    for c in survivors:
        for s in range(4):
            start = (c.id, s)
            if diagram._arc_at[start] in used_arcs:
                continue
            # only begin walks on ends whose arc isn't consumed yet
            terminal, consumed = follow(start)
            if terminal is None:
                raise RuntimeError("open chain returned to its start")
            if any(a in used_arcs for a in consumed):
                continue
            used_arcs.update(consumed)
            new_arcs.append(Arc(id=next_arc_id, ends=(start, terminal)))
            next_arc_id += 1
    # leftover arcs form closed chains entirely within removed crossings
    leftover = [a for a in diagram.arcs if a.id not in used_arcs]
    while leftover:
        arc = leftover[0]
        chain = {arc.id}
        e = arc.ends[0]
        while True:
            a = diagram.arc_at(e)
            chain.add(a.id)
            c, s = a.ends[1] if a.ends[0] == e else a.ends[0]
            e = (c, (s + 2) % 4)
            if diagram.arc_at(e).id == arc.id:
                break
        new_loops.append(FreeLoop(id=len(new_loops)))
        leftover = [a for a in leftover if a.id not in chain]

    return ShadowDiagram(survivors, new_arcs, new_loops)


# ---------------------------------------------------------------------------
# Move detection
# ---------------------------------------------------------------------------


def find_r1(diagram: ShadowDiagram) -> list[SimplifyMove]:
    """Kinks: monogon faces, i.e. fixed points of the face walk."""
    moves = []
    seen = set()
    for orbit in diagram.faces():
        if len(orbit) == 1:
            cid = orbit[0][0]
            if cid not in seen:
                seen.add(cid)
                moves.append(SimplifyMove("r1", (cid,)))
    return sorted(moves, key=lambda m: m.crossings)


def _bigon_data(diagram: ShadowDiagram):
    """Bigon faces as (c1, s1, c2, s2) where the face orbit is
    [(c1,s1), (c2,s2)] over two distinct crossings and arcs."""
    for orbit in diagram.faces():
        if len(orbit) != 2:
            continue
        (c1, s1), (c2, s2) = orbit
        if c1 == c2:
            continue
        if diagram._arc_at[(c1, s1)] == diagram._arc_at[(c2, s2)]:
            continue
        yield c1, s1, c2, s2


def find_r2(diagram: ShadowDiagram) -> list[SimplifyMove]:
    """Bigons whose two crossings have the same strand on top."""
    moves = []
    seen = set()
    for c1, s1, c2, s2 in _bigon_data(diagram):
        st1 = diagram.crossing_by_id[c1].state
        st2 = diagram.crossing_by_id[c2].state
        if not (st1.resolved and st2.resolved):
            continue
        # the arc at (c1, s1) reaches c2 at slot s2 - 1
        if _is_over(st1, s1) == _is_over(st2, s2 - 1):
            key = (min(c1, c2), max(c1, c2))
            if key not in seen:
                seen.add(key)
                moves.append(SimplifyMove("r2", key))
    return sorted(moves, key=lambda m: m.crossings)


def find_r3(diagram: ShadowDiagram) -> list[SimplifyMove]:
    """Triangle faces where one strand runs over (or under) both of its
    crossings; that strand may slide across the opposite crossing."""
    moves = []
    for orbit in diagram.faces():
        if len(orbit) != 3:
            continue
        cs = [e[0] for e in orbit]
        if len(set(cs)) != 3:
            continue
        states = [diagram.crossing_by_id[c].state for c in cs]
        if not all(s.resolved for s in states):
            continue
        # rotate: candidate slider = side arc from orbit[i] to orbit[i+1]
        for i in range(3):
            (c1, s1) = orbit[i]
            (c2, s2) = orbit[(i + 1) % 3]
            (c3, s3) = orbit[(i + 2) % 3]
            st1 = diagram.crossing_by_id[c1].state
            st2 = diagram.crossing_by_id[c2].state
            if _is_over(st1, s1) == _is_over(st2, (s2 - 1) % 4):
                moves.append(SimplifyMove("r3", (c1, c2, c3), (s1, s2, s3)))
    return sorted(moves, key=lambda m: (m.crossings, m.slots))


def apply_r3(diagram: ShadowDiagram, move: SimplifyMove) -> ShadowDiagram:
    """Slide the strand through c1 and c2 across c3.

    The three crossings keep their ids, states, and local slot/strand
    assignments; only the arcs around the triangle are rewired.
    """
    c1, c2, c3 = move.crossings
    s1, s2, s3 = move.slots
    m1 = diagram._arc_at[(c1, s1)]
    m2 = diagram._arc_at[(c2, s2)]
    m3 = diagram._arc_at[(c3, s3)]
    if len({m1, m2, m3}) != 3:
        raise ValueError("degenerate triangle")
    # The slider is dragged across c3, so the two crossings it carries
    # swap their order along it; every strand keeps its slot-to-direction
    # frame at each crossing, which pins the rewiring below.  The six
    # outer continuations re-terminate and three fresh triangle sides
    # appear on the far side of c3.
    remap = {
        (c1, (s1 + 1) % 4): (c3, s3),            # far end of the c1 cross-strand
        (c3, (s3 + 2) % 4): (c1, (s1 - 1) % 4),  # its near end hops past c3
        (c2, (s2 + 2) % 4): (c3, (s3 - 1) % 4),  # far end of the c2 cross-strand
        (c3, (s3 + 1) % 4): (c2, s2),            # its near end hops past c3
        (c1, (s1 + 2) % 4): (c2, (s2 - 1) % 4),  # slider outers swap crossings
        (c2, (s2 + 1) % 4): (c1, s1),
    }
    new_arcs: list[Arc] = []
    next_id = 0
    for arc in diagram.arcs:
        if arc.id in (m1, m2, m3):
            continue
        ends = tuple(remap.get(e, e) for e in arc.ends)
        new_arcs.append(Arc(id=next_id, ends=ends))
        next_id += 1
    for ends in (
        ((c3, (s3 + 2) % 4), (c1, (s1 + 1) % 4)),   # new c3-c1 side
        ((c3, (s3 + 1) % 4), (c2, (s2 + 2) % 4)),   # new c3-c2 side
        ((c1, (s1 + 2) % 4), (c2, (s2 + 1) % 4)),   # new slider middle
    ):
        new_arcs.append(Arc(id=next_id, ends=ends))
        next_id += 1
    stripped = [c.__class__(id=c.id, state=c.state, syllable=c.syllable)
                for c in diagram.crossings]
    return ShadowDiagram(stripped, new_arcs, diagram.free_loops)


def apply_move(diagram: ShadowDiagram, move: SimplifyMove) -> ShadowDiagram:
    if move.kind == "r1":
        if not any(m.crossings == move.crossings for m in find_r1(diagram)):
            raise ValueError(f"R1 not applicable at {move.crossings}")
        return smooth_out(diagram, set(move.crossings))
    if move.kind == "r2":
        if not any(m.crossings == move.crossings for m in find_r2(diagram)):
            raise ValueError(f"R2 not applicable at {move.crossings}")
        return smooth_out(diagram, set(move.crossings))
    if move.kind == "r3":
        if not any(m.crossings == move.crossings and m.slots == move.slots
                   for m in find_r3(diagram)):
            raise ValueError(f"R3 not applicable at {move.crossings}")
        return apply_r3(diagram, move)
    raise ValueError(f"unknown move kind {move.kind!r}")


def replay_trace(diagram: ShadowDiagram,
                 trace: Sequence[SimplifyMove]) -> ShadowDiagram:
    out = diagram
    for move in trace:
        out = apply_move(out, move)
    return out


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _wiring_key(diagram: ShadowDiagram):
    rows = []
    for c in diagram.crossings:
        row = [c.id, c.state.value]
        for s in range(4):
            other_c, other_s = diagram.other_end((c.id, s))
            row.append((other_c, other_s))
        rows.append(tuple(row))
    return tuple(rows), len(diagram.free_loops)


def _greedy_reduce(diagram: ShadowDiagram,
                   trace: list[SimplifyMove]) -> ShadowDiagram:
    while True:
        moves = find_r1(diagram) + find_r2(diagram)
        if not moves:
            return diagram
        move = moves[0]
        diagram = apply_move(diagram, move)
        trace.append(move)


def simplify(diagram: ShadowDiagram,
             budget: int = 10_000) -> tuple[ShadowDiagram, list[SimplifyMove]]:
    """Reduce with greedy R1/R2, then explore R3 moves breadth-first
    (at most ``budget`` explored positions) to unlock more reductions.

    Returns the best diagram found (fewest crossings, then fewest
    non-self-intersections) and a replayable trace reaching it.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    trace: list[SimplifyMove] = []
    current = _greedy_reduce(diagram, trace)

    def score(d: ShadowDiagram):
        return (d.n_crossings, len(d.nsi_ids()))

    best, best_trace = current, list(trace)
    if best.n_crossings == 0 or len(best.nsi_ids()) == 0:
        return best, best_trace
    seen = {_wiring_key(current)}
    queue = deque([(current, list(trace))])
    nodes = 0
    while queue and nodes < budget:
        d, t = queue.popleft()
        for move in find_r3(d):
            nodes += 1
            if nodes > budget:
                break
            stepped_trace = t + [move]
            stepped = apply_move(d, move)
            stepped = _greedy_reduce(stepped, stepped_trace)
            key = _wiring_key(stepped)
            if key in seen:
                continue
            seen.add(key)
            if score(stepped) < score(best):
                best, best_trace = stepped, stepped_trace
                if best.n_crossings == 0 or len(best.nsi_ids()) == 0:
                    return best, best_trace
            queue.append((stepped, stepped_trace))
    return best, best_trace


def decide_splittability(diagram: ShadowDiagram,
                         budget: int = 10_000) -> Verdict:
    """Three-valued splittability for a fully resolved 2-component diagram.

    A nonzero linking number is a certificate of unsplittability; a
    simplification to a diagram with no non-self-intersections is a
    certificate of splittability; otherwise the engine abstains.
    """
    if diagram.n_components != 2:
        raise ValueError("splittability verdicts need exactly 2 components")
    if not diagram.fully_resolved:
        raise ValueError("diagram has unresolved crossings")
    lk = pseudo_linking_number(diagram)
    if lk != 0:
        return unsplittable(certificate=lk, detail=f"linking number {lk}")
    if diagram.is_split():
        return splittable(certificate=[], detail="already split")
    reduced, trace = simplify(diagram, budget)
    if reduced.is_split():
        return splittable(certificate=trace,
                          detail=f"split after {len(trace)} moves")
    return unknown(detail=(f"lk 0, irreducible at budget {budget}: "
                           f"{reduced.n_crossings} crossings remain"))
