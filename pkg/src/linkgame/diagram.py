"""Planar shadow diagrams with per-crossing resolution state.

A diagram is a 4-valent plane graph given by a rotation system: each
crossing lists its four incident arc-ends in counterclockwise order
(slots 0..3).  A strand entering slot s leaves through slot (s+2) % 4;
the two strands at a crossing therefore occupy slot pairs (0,2) and
(1,3).  Resolution state says which pair is the overstrand.

Crossing-less components (free loops) are first-class: simplification
and degenerate closures produce them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Point = tuple[float, float]
End = tuple[int, int]  # (crossing id, slot)


class PDError(ValueError):
    """Malformed or non-planar annotated-PD input."""


class CrossingState(Enum):
    UNRESOLVED = "?"
    RESOLVED_A = "/"   # strand through slots (0, 2) is over
    RESOLVED_B = "\\"  # strand through slots (1, 3) is over

    @property
    def resolved(self) -> bool:
        return self is not CrossingState.UNRESOLVED

    def flipped(self) -> "CrossingState":
        if self is CrossingState.RESOLVED_A:
            return CrossingState.RESOLVED_B
        if self is CrossingState.RESOLVED_B:
            return CrossingState.RESOLVED_A
        return self


@dataclass(frozen=True)
class Crossing:
    id: int
    state: CrossingState = CrossingState.UNRESOLVED
    syllable: Optional[int] = None          # 1-based builder back-reference
    position: Optional[Point] = None
    slot_dirs: Optional[tuple[Point, ...]] = None  # unit offsets per slot


@dataclass(frozen=True)
class Arc:
    id: int
    ends: tuple[End, End]
    path: Optional[tuple[Point, ...]] = None


@dataclass(frozen=True)
class FreeLoop:
    """A crossing-less closed component, with an optional drawn path."""

    id: int
    path: Optional[tuple[Point, ...]] = None


@dataclass(frozen=True)
class TwistRegion:
    """Maximal chain of crossings pairwise joined by bigon faces."""

    crossings: tuple[int, ...]
    is_cycle: bool = False

    @property
    def size(self) -> int:
        return len(self.crossings)


class ShadowDiagram:
    """Immutable snapshot of a shadow / pseudodiagram.

    All mutating operations return new diagrams.  Components are traced
    eagerly; faces are computed lazily and cached.
    """

    def __init__(self, crossings: Sequence[Crossing], arcs: Sequence[Arc],
                 free_loops: Sequence[FreeLoop] = (),
                 component_names: Optional[dict[int, str]] = None):
        self.crossings: tuple[Crossing, ...] = tuple(
            sorted(crossings, key=lambda c: c.id))
        self.arcs: tuple[Arc, ...] = tuple(sorted(arcs, key=lambda a: a.id))
        self.free_loops: tuple[FreeLoop, ...] = tuple(
            sorted(free_loops, key=lambda f: f.id))
        self.crossing_by_id = {c.id: c for c in self.crossings}
        self.arc_by_id = {a.id: a for a in self.arcs}
        if len(self.crossing_by_id) != len(self.crossings):
            raise PDError("duplicate crossing id")
        if len(self.arc_by_id) != len(self.arcs):
            raise PDError("duplicate arc id")
        self._arc_at: dict[End, int] = {}
        for a in self.arcs:
            for e in a.ends:
                if e in self._arc_at:
                    raise PDError(f"slot {e} used by two arc-ends")
                if e[0] not in self.crossing_by_id or not 0 <= e[1] < 4:
                    raise PDError(f"arc {a.id} references missing slot {e}")
                self._arc_at[e] = a.id
        for c in self.crossings:
            for s in range(4):
                if (c.id, s) not in self._arc_at:
                    raise PDError(f"dangling arc-end at crossing {c.id} slot {s}")
        self.component_of_arc: dict[int, int] = {}
        self.component_of_loop: dict[int, int] = {}
        self._trace_components()
        names = component_names or {}
        self.component_names = {
            i: names.get(i, chr(ord("A") + i) if i < 26 else str(i))
            for i in range(self.n_components)
        }
        self._faces: Optional[tuple[tuple[End, ...], ...]] = None

    # -- basic structure ---------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings)

    def arc_at(self, end: End) -> Arc:
        return self.arc_by_id[self._arc_at[end]]

    def other_end(self, end: End) -> End:
        arc = self.arc_at(end)
        return arc.ends[1] if arc.ends[0] == end else arc.ends[0]

    def _trace_components(self) -> None:
        comp = 0
        seen: set[int] = set()
        for arc in self.arcs:
            if arc.id in seen:
                continue
            # walk the strand through crossings until it closes up
            self.component_of_arc[arc.id] = comp
            seen.add(arc.id)
            end = arc.ends[1]
            while True:
                c, s = end
                nxt = (c, (s + 2) % 4)
                nxt_arc = self.arc_at(nxt)
                if nxt_arc.id in seen:
                    break
                seen.add(nxt_arc.id)
                self.component_of_arc[nxt_arc.id] = comp
                end = nxt_arc.ends[1] if nxt_arc.ends[0] == nxt else nxt_arc.ends[0]
            comp += 1
        for loop in self.free_loops:
            self.component_of_loop[loop.id] = comp
            comp += 1
        self.n_components = comp

    def strand_components(self, crossing_id: int) -> tuple[int, int]:
        """Component labels of the (0,2)-strand and the (1,3)-strand."""
        a02 = self.component_of_arc[self._arc_at[(crossing_id, 0)]]
        b02 = self.component_of_arc[self._arc_at[(crossing_id, 2)]]
        a13 = self.component_of_arc[self._arc_at[(crossing_id, 1)]]
        b13 = self.component_of_arc[self._arc_at[(crossing_id, 3)]]
        if a02 != b02 or a13 != b13:
            raise PDError(f"inconsistent strand tracing at crossing {crossing_id}")
        return a02, a13

    # -- faces and planarity -----------------------------------------------

    def faces(self) -> tuple[tuple[End, ...], ...]:
        """Face boundaries as orbits over arc-ends.

        The orbit step traverses the arc at the current end and turns to
        the next slot counterclockwise; orbits enumerate the faces of
        the surface defined by the rotation system.
        """
        if self._faces is not None:
            return self._faces
        remaining = set(self._arc_at.keys())
        faces = []
        while remaining:
            start = min(remaining)
            orbit = []
            e = start
            while True:
                orbit.append(e)
                remaining.discard(e)
                c, s = self.other_end(e)
                e = (c, (s + 1) % 4)
                if e == start:
                    break
            faces.append(tuple(orbit))
        self._faces = tuple(faces)
        return self._faces

    def crossing_graph_components(self) -> list[set[int]]:
        """Connected components of the underlying 4-valent graph."""
        adj: dict[int, set[int]] = {c.id: set() for c in self.crossings}
        for a in self.arcs:
            adj[a.ends[0][0]].add(a.ends[1][0])
            adj[a.ends[1][0]].add(a.ends[0][0])
        comps = []
        left = set(adj)
        while left:
            stack = [min(left)]
            group = set()
            while stack:
                v = stack.pop()
                if v in group:
                    continue
                group.add(v)
                stack.extend(adj[v] - group)
            comps.append(group)
            left -= group
        return comps

    def check_planar(self) -> None:
        """Verify Euler's formula V - E + F = 2 on every connected piece."""
        faces = self.faces()
        for group in self.crossing_graph_components():
            v = len(group)
            e = sum(1 for a in self.arcs if a.ends[0][0] in group)
            f = sum(1 for orbit in faces if orbit[0][0] in group)
            if v - e + f != 2:
                raise PDError(
                    f"non-planar rotation system (V-E+F = {v}-{e}+{f} != 2)")

    # -- resolution state ---------------------------------------------------

    def resolution_key(self) -> tuple[str, ...]:
        return tuple(c.state.value for c in self.crossings)

    @property
    def fully_resolved(self) -> bool:
        return all(c.state.resolved for c in self.crossings)

    def unresolved_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings if not c.state.resolved)

    def with_state(self, crossing_id: int, state: CrossingState) -> "ShadowDiagram":
        new = object.__new__(ShadowDiagram)
        new.__dict__.update(self.__dict__)
        crossing = self.crossing_by_id[crossing_id]
        updated = replace(crossing, state=state)
        new.crossings = tuple(updated if c.id == crossing_id else c
                              for c in self.crossings)
        new.crossing_by_id = dict(self.crossing_by_id)
        new.crossing_by_id[crossing_id] = updated
        return new

    def as_shadow(self) -> "ShadowDiagram":
        """Forget every resolution."""
        out = self
        for c in self.crossings:
            if c.state.resolved:
                out = out.with_state(c.id, CrossingState.UNRESOLVED)
        return out

    # -- misc ----------------------------------------------------------------

    def nsi_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings
                     if classify_crossing(self, c.id) == "NSI")

    def si_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings
                     if classify_crossing(self, c.id) == "SI")

    def is_split(self) -> bool:
        """A 2-component diagram is split when no crossing joins the two
        components; a face boundary then separates them."""
        return len(self.nsi_ids()) == 0

    def has_coordinates(self) -> bool:
        return all(c.position is not None for c in self.crossings)

    def __repr__(self) -> str:
        return (f"ShadowDiagram({self.n_crossings} crossings, "
                f"{self.n_components} components)")


def classify_crossing(diagram: ShadowDiagram, crossing_id: int) -> str:
    """"SI" when both strands at the crossing belong to one component."""
    if crossing_id not in diagram.crossing_by_id:
        raise KeyError(f"unknown crossing {crossing_id}")
    a, b = diagram.strand_components(crossing_id)
    return "SI" if a == b else "NSI"


# ---------------------------------------------------------------------------
# Orientation and crossing signs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Direction of travel per arc: True means ends[0] -> ends[1]."""

    forward: dict[int, bool]

    def head(self, arc: Arc) -> End:
        return arc.ends[1] if self.forward[arc.id] else arc.ends[0]

    def tail(self, arc: Arc) -> End:
        return arc.ends[0] if self.forward[arc.id] else arc.ends[1]


def canonical_orientation(diagram: ShadowDiagram,
                          reverse: Iterable[int] = ()) -> Orientation:
    """Orient every component starting from its lowest-id arc.

    ``reverse`` lists component indices whose direction is flipped.
    """
    rev = set(reverse)
    forward: dict[int, bool] = {}
    for arc in diagram.arcs:
        if arc.id in forward:
            continue
        comp = diagram.component_of_arc[arc.id]
        flip = comp in rev
        forward[arc.id] = not flip
        end = arc.ends[1] if not flip else arc.ends[0]
        while True:
            c, s = end
            nxt = (c, (s + 2) % 4)
            nxt_arc = diagram.arc_at(nxt)
            if nxt_arc.id in forward:
                break
            forward[nxt_arc.id] = nxt_arc.ends[0] == nxt
            end = nxt_arc.ends[1] if nxt_arc.ends[0] == nxt else nxt_arc.ends[0]
    return Orientation(forward)


def crossing_sign(diagram: ShadowDiagram, orientation: Orientation,
                  crossing_id: int) -> int:
    """Sign of a resolved crossing under the right-hand convention.

    With slots counterclockwise, the sign is +1 exactly when the
    understrand enters one slot counterclockwise from where the
    overstrand enters; this matches det(over direction, under
    direction) > 0.
    """
    crossing = diagram.crossing_by_id[crossing_id]
    if not crossing.state.resolved:
        raise ValueError(f"crossing {crossing_id} is unresolved")
    over_first = 0 if crossing.state is CrossingState.RESOLVED_A else 1

    def entry_slot(first_slot: int) -> int:
        # the strand occupies slots first_slot and first_slot + 2; it
        # enters at whichever slot is the head of its incoming arc
        for s in (first_slot, first_slot + 2):
            arc = diagram.arc_at((crossing_id, s))
            if orientation.head(arc) == (crossing_id, s):
                return s
        raise PDError(f"orientation does not flow through crossing {crossing_id}")

    over_in = entry_slot(over_first)
    under_in = entry_slot(1 - over_first)
    return 1 if (under_in - over_in) % 4 == 1 else -1


def resolution_for_sign(diagram: ShadowDiagram, orientation: Orientation,
                        crossing_id: int, sign: int) -> CrossingState:
    """The resolution giving the crossing the requested sign (+1/-1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    trial = diagram.with_state(crossing_id, CrossingState.RESOLVED_A)
    if crossing_sign(trial, orientation, crossing_id) == sign:
        return CrossingState.RESOLVED_A
    return CrossingState.RESOLVED_B


def pseudo_linking_number(diagram: ShadowDiagram,
                          orientation: Optional[Orientation] = None) -> Fraction:
    """Half the signed sum over resolved non-self-intersections.

    Equals the linking number once every crossing is resolved.  The
    value is orientation-dependent only up to global sign; reversing
    both components leaves it unchanged.
    """
    if diagram.n_components != 2:
        raise ValueError(
            f"pseudo-linking number needs 2 components, got {diagram.n_components}")
    if orientation is None:
        orientation = canonical_orientation(diagram)
    total = 0
    for c in diagram.crossings:
        if c.state.resolved and classify_crossing(diagram, c.id) == "NSI":
            total += crossing_sign(diagram, orientation, c.id)
    return Fraction(total, 2)


# ---------------------------------------------------------------------------
# Twist regions (maximal bigon chains)
# ---------------------------------------------------------------------------


def bigon_faces(diagram: ShadowDiagram) -> list[tuple[End, End]]:
    out = []
    for orbit in diagram.faces():
        if len(orbit) == 2 and orbit[0][0] != orbit[1][0]:
            a0 = diagram._arc_at[orbit[0]]
            a1 = diagram._arc_at[orbit[1]]
            if a0 != a1:
                out.append((orbit[0], orbit[1]))
    return out


def twist_regions(diagram: ShadowDiagram) -> list[TwistRegion]:
    """Partition crossings into maximal bigon chains.

    Crossings sharing a bigon face are chained together; everything
    else is reported as a singleton region.
    """
    adj: dict[int, set[int]] = {c.id: set() for c in diagram.crossings}
    for e0, e1 in bigon_faces(diagram):
        adj[e0[0]].add(e1[0])
        adj[e1[0]].add(e0[0])

    regions = []
    visited: set[int] = set()
    for start in sorted(adj):
        if start in visited or not adj[start]:
            continue
        group = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in group:
                    group.add(w)
                    stack.append(w)
        visited |= group
        degrees = {v: len(adj[v] & group) for v in group}
        if all(d <= 2 for d in degrees.values()):
            ends = sorted(v for v in group if degrees[v] <= 1)
            if ends:
                chain = _walk_chain(adj, ends[0], group)
                regions.append(TwistRegion(tuple(chain)))
            else:  # a closed necklace of bigons
                chain = _walk_chain(adj, min(group), group)
                regions.append(TwistRegion(tuple(chain), is_cycle=True))
        else:
            # branching bigon adjacency: carve deterministic chains
            left = set(group)
            while left:
                chain = _walk_chain(adj, min(left), left)
                regions.append(TwistRegion(tuple(chain), is_cycle=False))
                left -= set(chain)
    for c in sorted(adj):
        if c not in visited:
            regions.append(TwistRegion((c,)))
    regions.sort(key=lambda r: r.crossings[0])
    return regions


def _walk_chain(adj: dict[int, set[int]], start: int, allowed: set[int]) -> list[int]:
    chain = [start]
    used = {start}
    while True:
        options = sorted(adj[chain[-1]] & allowed - used)
        if not options:
            break
        chain.append(options[0])
        used.add(options[0])
    # extend backwards too (when the start was mid-chain)
    while True:
        options = sorted(adj[chain[0]] & allowed - used)
        if not options:
            break
        chain.insert(0, options[0])
        used.add(options[0])
    return chain


def region_of_crossing(regions: Sequence[TwistRegion], crossing_id: int) -> TwistRegion:
    for r in regions:
        if crossing_id in r.crossings:
            return r
    raise KeyError(f"crossing {crossing_id} not in any region")


# ---------------------------------------------------------------------------
# Checkerboard coloring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceColoring:
    colors: tuple[str, ...]  # "black"/"white" per face index
    outer_face: int


def checkerboard(diagram: ShadowDiagram,
                 outer_face: Optional[int] = None) -> FaceColoring:
    """Proper 2-coloring of the faces with the unbounded face white.

    Requires a single-component shadow.  When ``outer_face`` is not
    given, the face with the longest boundary walk is used (lowest
    index on ties); pass an explicit index when the drawing is known.
    """
    if diagram.n_components != 1:
        raise ValueError("checkerboard coloring needs a single component")
    if diagram.n_crossings == 0:
        # a plain circle: inside black, outside white
        return FaceColoring(colors=("black", "white"), outer_face=1)
    faces = diagram.faces()
    if outer_face is None:
        outer_face = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    arc_faces: dict[int, list[int]] = {}
    for i, orbit in enumerate(faces):
        for end in orbit:
            arc_faces.setdefault(diagram._arc_at[end], []).append(i)
    neighbors: dict[int, set[int]] = {i: set() for i in range(len(faces))}
    for incident in arc_faces.values():
        for i in incident:
            neighbors[i].update(j for j in incident if j != i)
    colors: list[Optional[str]] = [None] * len(faces)
    colors[outer_face] = "white"
    queue = [outer_face]
    while queue:
        i = queue.pop()
        want = "black" if colors[i] == "white" else "white"
        for j in neighbors[i]:
            if colors[j] is None:
                colors[j] = want
                queue.append(j)
            elif colors[j] != want:
                raise PDError("face adjacency is not 2-colorable")
    if any(c is None for c in colors):
        raise PDError("disconnected face structure in checkerboard coloring")
    return FaceColoring(tuple(colors), outer_face)


# ---------------------------------------------------------------------------
# Annotated PD text format
# ---------------------------------------------------------------------------

_X_RE = re.compile(
    r"^X\s+(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s+([?/\\])"
    r"(?:\s+@\s*(-?[\d.]+)\s*,\s*(-?[\d.]+))?\s*$")
_C_RE = re.compile(r"^C\s+(\d+)\s*:\s*(\S+)\s*$")
_O_RE = re.compile(r"^O\s*(\S*)\s*$")


def parse_pd(text: str, require_two_components: bool = False) -> ShadowDiagram:
    """Parse the annotated-PD format.

    One crossing per line: ``X a,b,c,d m`` where a-d are arc ids listed
    counterclockwise and m is ``?`` (unresolved), ``/`` (pair (a,c)
    over) or ``\\`` (pair (b,d) over); an optional ``@x,y`` suffix pins
    coordinates.  ``C i:label`` renames component i, ``O label`` adds a
    crossing-less loop, ``#`` starts a comment.
    """
    crossings: list[Crossing] = []
    arc_ends: dict[int, list[End]] = {}
    names: dict[int, str] = {}
    loops: list[FreeLoop] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _X_RE.match(line)
        if m:
            cid = len(crossings)
            pos = None
            if m.group(6) is not None:
                pos = (float(m.group(6)), float(m.group(7)))
            crossings.append(Crossing(
                id=cid, state=CrossingState(m.group(5)), position=pos))
            for slot in range(4):
                arc_ends.setdefault(int(m.group(slot + 1)), []).append((cid, slot))
            continue
        m = _C_RE.match(line)
        if m:
            names[int(m.group(1))] = m.group(2)
            continue
        m = _O_RE.match(line)
        if m:
            loops.append(FreeLoop(id=len(loops)))
            continue
        raise PDError(f"line {lineno}: cannot parse {raw!r}")
    for arc_id, ends in sorted(arc_ends.items()):
        if len(ends) != 2:
            raise PDError(
                f"dangling arc-end: arc {arc_id} appears {len(ends)} time(s)")
    arcs = [Arc(id=arc_id, ends=(ends[0], ends[1]))
            for arc_id, ends in sorted(arc_ends.items())]
    diagram = ShadowDiagram(crossings, arcs, loops, component_names=names)
    diagram.check_planar()
    if require_two_components and diagram.n_components != 2:
        raise PDError(
            f"game mode needs exactly 2 components, got {diagram.n_components}")
    return diagram


def render_pd(diagram: ShadowDiagram) -> str:
    """Inverse of parse_pd (coordinates kept, paths dropped)."""
    lines = []
    arc_index = {a.id: i + 1 for i, a in enumerate(diagram.arcs)}
    for c in diagram.crossings:
        ids = [arc_index[diagram._arc_at[(c.id, s)]] for s in range(4)]
        line = f"X {ids[0]},{ids[1]},{ids[2]},{ids[3]} {c.state.value}"
        if c.position is not None:
            line += f" @{c.position[0]:g},{c.position[1]:g}"
        lines.append(line)
    for _ in diagram.free_loops:
        lines.append("O loop")
    for i, name in sorted(diagram.component_names.items()):
        lines.append(f"C {i}:{name}")
    return "\n".join(lines) + "\n"
