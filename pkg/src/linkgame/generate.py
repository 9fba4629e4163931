"""Seeded random shadow generation.

Diagrams grow by crossing insertions guided by the face structure:
crossing two arc traversals that co-bound a face (or folding a kink
into one traversal) keeps the rotation system planar.  The candidate
wiring is validated by Euler's formula, so every emitted diagram is a
genuine plane shadow; component counts are invariant under insertion,
which pins them at the seed's value.
"""

from __future__ import annotations

import random
from dataclasses import replace
from typing import Optional

from .construct import hopf_shadow
from .diagram import Arc, Crossing, CrossingState, PDError, ShadowDiagram


def strip_provenance(diagram: ShadowDiagram) -> ShadowDiagram:
    """Drop builder back-references and layout, keeping combinatorics."""
    crossings = [Crossing(id=c.id, state=c.state) for c in diagram.crossings]
    arcs = [Arc(id=a.id, ends=a.ends) for a in diagram.arcs]
    return ShadowDiagram(crossings, arcs, diagram.free_loops)


def _kink_seed() -> ShadowDiagram:
    """A circle with one kink: the smallest knot shadow with a crossing."""
    crossings = [Crossing(id=0)]
    arcs = [Arc(id=0, ends=((0, 1), (0, 2))),
            Arc(id=1, ends=((0, 3), (0, 0)))]
    return ShadowDiagram(crossings, arcs)


def _try_build(crossings, arcs) -> Optional[ShadowDiagram]:
    try:
        d = ShadowDiagram(crossings, arcs)
        d.check_planar()
        return d
    except PDError:
        return None


def _cross_traversals(diagram: ShadowDiagram, e_i, e_j) -> ShadowDiagram:
    """Insert one crossing between two face traversals of a single
    component.  (A lone crossing between different components would make
    the non-self-intersection count odd, which no plane diagram allows,
    so callers poke instead.)"""
    a = diagram.arc_at(e_i)
    b = diagram.arc_at(e_j)
    x = max(diagram.crossing_ids, default=-1) + 1
    crossings = list(diagram.crossings) + [Crossing(id=x)]
    next_arc = max((arc.id for arc in diagram.arcs), default=-1) + 1
    if a.id == b.id:
        # both ends of one arc: the arc crosses itself inside the face
        others = [arc for arc in diagram.arcs if arc.id != a.id]
        for w_in, w_out in ((1, 3), (3, 1)):
            arcs = others + [
                Arc(id=next_arc, ends=(e_i, (x, 0))),
                Arc(id=next_arc + 1, ends=((x, 2), (x, w_in))),
                Arc(id=next_arc + 2, ends=((x, w_out), e_j)),
            ]
            built = _try_build(crossings, arcs)
            if built is not None:
                return built
        raise PDError("self-crossing insertion failed")
    a_other = a.ends[1] if a.ends[0] == e_i else a.ends[0]
    b_other = b.ends[1] if b.ends[0] == e_j else b.ends[0]
    others = [arc for arc in diagram.arcs if arc.id not in (a.id, b.id)]
    for w_in, w_out in ((1, 3), (3, 1)):
        arcs = others + [
            Arc(id=next_arc, ends=(e_i, (x, 0))),
            Arc(id=next_arc + 1, ends=((x, 2), a_other)),
            Arc(id=next_arc + 2, ends=(e_j, (x, w_in))),
            Arc(id=next_arc + 3, ends=((x, w_out), b_other)),
        ]
        built = _try_build(crossings, arcs)
        if built is not None:
            return built
    raise PDError("crossing insertion failed")


def _poke(diagram: ShadowDiagram, e_i, e_j) -> ShadowDiagram:
    """Push one traversal's arc across another in an R2 pattern, adding
    two crossings; works across components (parity-safe)."""
    a = diagram.arc_at(e_i)
    b = diagram.arc_at(e_j)
    if a.id == b.id:
        raise PDError("poking an arc through itself is not supported")
    x = max(diagram.crossing_ids, default=-1) + 1
    y = x + 1
    crossings = list(diagram.crossings) + [Crossing(id=x), Crossing(id=y)]
    base = max((arc.id for arc in diagram.arcs), default=-1) + 1
    a_other = a.ends[1] if a.ends[0] == e_i else a.ends[0]
    b_other = b.ends[1] if b.ends[0] == e_j else b.ends[0]
    others = [arc for arc in diagram.arcs if arc.id not in (a.id, b.id)]
    a_side = [
        Arc(id=base, ends=(e_i, (x, 0))),
        Arc(id=base + 1, ends=((x, 2), (y, 0))),
        Arc(id=base + 2, ends=((y, 2), a_other)),
    ]
    for first, second in ((x, y), (y, x)):
        for w1 in ((1, 3), (3, 1)):
            for w2 in ((1, 3), (3, 1)):
                b_side = [
                    Arc(id=base + 3, ends=(e_j, (first, w1[0]))),
                    Arc(id=base + 4, ends=((first, w1[1]), (second, w2[0]))),
                    Arc(id=base + 5, ends=((second, w2[1]), b_other)),
                ]
                built = _try_build(crossings, others + a_side + b_side)
                if built is not None:
                    return built
    raise PDError("poke insertion failed")


def _fold_kink(diagram: ShadowDiagram, e_i) -> ShadowDiagram:
    """Fold a kink into the traversal starting at one arc-end."""
    a = diagram.arc_at(e_i)
    a_other = a.ends[1] if a.ends[0] == e_i else a.ends[0]
    x = max(diagram.crossing_ids, default=-1) + 1
    crossings = list(diagram.crossings) + [Crossing(id=x)]
    next_arc = max((arc.id for arc in diagram.arcs), default=-1) + 1
    others = [arc for arc in diagram.arcs if arc.id != a.id]
    for loop_end, out in ((1, 3), (3, 1)):
        arcs = others + [
            Arc(id=next_arc, ends=(e_i, (x, 0))),
            Arc(id=next_arc + 1, ends=((x, 2), (x, loop_end))),
            Arc(id=next_arc + 2, ends=((x, out), a_other)),
        ]
        built = _try_build(crossings, arcs)
        if built is not None:
            return built
    raise PDError("kink insertion failed")


def grow(diagram: ShadowDiagram, rng: random.Random,
         max_new: int = 2) -> ShadowDiagram:
    """Add one or two crossings at a random planar spot."""
    faces = diagram.faces()
    for _ in range(64):
        face = faces[rng.randrange(len(faces))]
        roll = rng.random()
        try:
            if len(face) >= 2 and roll < 0.75:
                i, j = rng.sample(range(len(face)), 2)
                e_i, e_j = face[i], face[j]
                same_arc = diagram.arc_at(e_i).id == diagram.arc_at(e_j).id
                same_component = (
                    diagram.component_of_arc[diagram.arc_at(e_i).id]
                    == diagram.component_of_arc[diagram.arc_at(e_j).id])
                if not same_arc and (max_new >= 2 and
                                     (not same_component or rng.random() < 0.5)):
                    grown = _poke(diagram, e_i, e_j)
                elif same_component:
                    grown = _cross_traversals(diagram, e_i, e_j)
                else:
                    continue
            else:
                e = face[rng.randrange(len(face))]
                grown = _fold_kink(diagram, e)
        except PDError:
            continue
        if grown.n_components != diagram.n_components:
            raise PDError("insertion changed the component count")
        return grown
    raise PDError("could not grow the diagram")


def random_link_shadow(rng: random.Random, n_crossings: int) -> ShadowDiagram:
    """A random 2-component shadow with exactly ``n_crossings`` (>= 2)."""
    if n_crossings < 2:
        raise ValueError("a 2-component shadow with NSIs needs >= 2 crossings")
    d = strip_provenance(hopf_shadow())
    while d.n_crossings < n_crossings:
        d = grow(d, rng, max_new=min(2, n_crossings - d.n_crossings))
    return d


def random_knot_shadow(rng: random.Random, n_crossings: int) -> ShadowDiagram:
    """A random 1-component shadow with exactly ``n_crossings`` (>= 1)."""
    if n_crossings < 1:
        raise ValueError("need at least one crossing")
    d = _kink_seed()
    while d.n_crossings < n_crossings:
        d = grow(d, rng, max_new=min(2, n_crossings - d.n_crossings))
    return d
