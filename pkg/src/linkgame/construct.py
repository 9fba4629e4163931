"""Build shadow diagrams of rational tangle closures.

The construction mirrors the twist recipe: start with two vertical
strands, twist the bottom endpoints for odd syllables and the right
endpoints for even syllables, then close numerator (top-with-top,
bottom-with-bottom) or denominator (left-with-left, right-with-right).

Each crossing's four slots are listed counterclockwise in the order
(top-right, top-left, bottom-left, bottom-right), so the strand through
slots (0, 2) is the positive-slope one and RESOLVED_A means a positive
(slope) resolution.  Layout coordinates are generated for the UI; the
engine never reads them.
"""

from __future__ import annotations

import math
from typing import Optional, Union

from .diagram import (
    Arc,
    Crossing,
    CrossingState,
    FreeLoop,
    Point,
    ShadowDiagram,
)
from .words import ClosureKind, PseudoTangleWord, closure_components, parse_word

_SLOT_OFFSETS = ((0.35, 0.35), (-0.35, 0.35), (-0.35, -0.35), (0.35, -0.35))
_ROOT2 = math.sqrt(0.5)
SLOT_DIRS = ((_ROOT2, _ROOT2), (-_ROOT2, _ROOT2),
             (-_ROOT2, -_ROOT2), (_ROOT2, -_ROOT2))

# slot indices in the (TR, TL, BL, BR) convention
TR, TL, BL, BR = 0, 1, 2, 3

POSITIVE_RESOLUTION = CrossingState.RESOLVED_A   # "/" overstrand
NEGATIVE_RESOLUTION = CrossingState.RESOLVED_B   # "\" overstrand


def slope_of(state: CrossingState) -> int:
    """Signed slope of a built crossing's overstrand (+1 for "/")."""
    if state is CrossingState.RESOLVED_A:
        return 1
    if state is CrossingState.RESOLVED_B:
        return -1
    raise ValueError("unresolved crossing has no slope")


def resolution_for_slope(slope: int) -> CrossingState:
    return POSITIVE_RESOLUTION if slope > 0 else NEGATIVE_RESOLUTION


class _Builder:
    def __init__(self):
        self.crossings: list[Crossing] = []
        # segments join slot tokens and pass-through anchor tokens
        self.segments: list[tuple[tuple, tuple, list[Point]]] = []
        self.corner_token = {
            "NW": ("anchor", "NW"), "NE": ("anchor", "NE"),
            "SW": ("anchor", "SW"), "SE": ("anchor", "SE"),
        }
        self.corner_pos: dict[str, Point] = {
            "NW": (0.0, 1.0), "NE": (1.0, 1.0),
            "SW": (0.0, 0.0), "SE": (1.0, 0.0),
        }
        self.segments.append((("anchor", "NW"), ("anchor", "SW"),
                              [self.corner_pos["NW"], self.corner_pos["SW"]]))
        self.segments.append((("anchor", "NE"), ("anchor", "SE"),
                              [self.corner_pos["NE"], self.corner_pos["SE"]]))

    def _slot_pos(self, center: Point, slot: int) -> Point:
        return (center[0] + _SLOT_OFFSETS[slot][0],
                center[1] + _SLOT_OFFSETS[slot][1])

    def _new_crossing(self, center: Point, state: CrossingState,
                      syllable: int) -> int:
        cid = len(self.crossings)
        self.crossings.append(Crossing(
            id=cid, state=state, syllable=syllable,
            position=center, slot_dirs=SLOT_DIRS))
        return cid

    def _connect(self, corner: str, cid: int, slot: int) -> None:
        center = self.crossings[cid].position
        slot_pos = self._slot_pos(center, slot)
        self.segments.append((self.corner_token[corner], ("slot", cid, slot),
                              [self.corner_pos[corner], slot_pos]))

    def _take_over(self, corner: str, cid: int, slot: int) -> None:
        self.corner_token[corner] = ("slot", cid, slot)
        self.corner_pos[corner] = self._slot_pos(
            self.crossings[cid].position, slot)

    def bottom_crossing(self, state: CrossingState, syllable: int) -> None:
        sw, se = self.corner_pos["SW"], self.corner_pos["SE"]
        center = ((sw[0] + se[0]) / 2.0, min(sw[1], se[1]) - 1.0)
        cid = self._new_crossing(center, state, syllable)
        self._connect("SW", cid, TL)
        self._connect("SE", cid, TR)
        self._take_over("SW", cid, BL)
        self._take_over("SE", cid, BR)

    def right_crossing(self, state: CrossingState, syllable: int) -> None:
        ne, se = self.corner_pos["NE"], self.corner_pos["SE"]
        center = (max(ne[0], se[0]) + 1.0, (ne[1] + se[1]) / 2.0)
        cid = self._new_crossing(center, state, syllable)
        self._connect("NE", cid, TL)
        self._connect("SE", cid, BL)
        self._take_over("NE", cid, TR)
        self._take_over("SE", cid, BR)

    def bounds(self) -> tuple[float, float, float, float]:
        xs, ys = [], []
        for _, _, pts in self.segments:
            for x, y in pts:
                xs.append(x)
                ys.append(y)
        for c in self.corner_pos.values():
            xs.append(c[0])
            ys.append(c[1])
        return min(xs), max(xs), min(ys), max(ys)

    def close(self, closure: ClosureKind) -> None:
        x0, x1, y0, y1 = self.bounds()
        if closure is ClosureKind.NUMERATOR:
            nw, ne = self.corner_pos["NW"], self.corner_pos["NE"]
            sw, se = self.corner_pos["SW"], self.corner_pos["SE"]
            self.segments.append((self.corner_token["NW"], self.corner_token["NE"],
                                  [nw, (nw[0], y1 + 1), (ne[0], y1 + 1), ne]))
            self.segments.append((self.corner_token["SW"], self.corner_token["SE"],
                                  [sw, (sw[0], y0 - 1), (se[0], y0 - 1), se]))
        else:
            nw, sw = self.corner_pos["NW"], self.corner_pos["SW"]
            ne, se = self.corner_pos["NE"], self.corner_pos["SE"]
            self.segments.append((self.corner_token["NW"], self.corner_token["SW"],
                                  [nw, (x0 - 1, nw[1]), (x0 - 1, sw[1]), sw]))
            self.segments.append((self.corner_token["NE"], self.corner_token["SE"],
                                  [ne, (x1 + 1, ne[1]), (x1 + 1, se[1]), se]))

    def assemble(self) -> ShadowDiagram:
        """Chain segments through anchors into arcs and free loops."""
        by_token: dict[tuple, list[int]] = {}
        for i, (t0, t1, _) in enumerate(self.segments):
            by_token.setdefault(t0, []).append(i)
            by_token.setdefault(t1, []).append(i)
        for token, segs in by_token.items():
            expected = 1 if token[0] == "slot" else 2
            if len(segs) != expected:
                raise RuntimeError(f"builder wiring error at {token}")

        used = [False] * len(self.segments)
        arcs: list[Arc] = []
        loops: list[FreeLoop] = []

        def walk(start_seg: int, start_token: tuple):
            """Follow a chain from start_token through seg, returning the
            terminal token and concatenated waypoints."""
            pts: list[Point] = []
            seg = start_seg
            token = start_token
            while True:
                used[seg] = True
                t0, t1, way = self.segments[seg]
                step = way if token == t0 else list(reversed(way))
                if pts:
                    step = step[1:]
                pts.extend(step)
                token = t1 if token == t0 else t0
                if token[0] == "slot":
                    return token, pts, None
                nxt = [j for j in by_token[token] if not used[j]]
                if not nxt:
                    return token, pts, "closed"
                seg = nxt[0]

        for i, (t0, t1, _) in enumerate(self.segments):
            if used[i]:
                continue
            if t0[0] == "slot" or t1[0] == "slot":
                start_token = t0 if t0[0] == "slot" else t1
                end_token, pts, _ = walk(i, start_token)
                arcs.append(Arc(
                    id=len(arcs),
                    ends=((start_token[1], start_token[2]),
                          (end_token[1], end_token[2])),
                    path=tuple(pts)))
        for i, (t0, t1, _) in enumerate(self.segments):
            if used[i]:
                continue
            _, pts, closed = walk(i, t0)
            if closed != "closed":
                raise RuntimeError("builder left an open chain")
            loops.append(FreeLoop(id=len(loops), path=tuple(pts)))
        return ShadowDiagram(self.crossings, arcs, loops)


def build_rational_shadow(w: Union[PseudoTangleWord, str],
                          closure: ClosureKind,
                          require_two_components: bool = True) -> ShadowDiagram:
    """Realize a pseudotangle word's closure as a shadow diagram.

    Resolved crossings in a syllable come first and are resolved with
    the syllable's slope sign; the rest are unresolved.  Crossings carry
    their 1-based syllable index as a back-reference.
    """
    if isinstance(w, str):
        w = parse_word(w)
    builder = _Builder()
    for i, syl in enumerate(w.syllables, start=1):
        states = [resolution_for_slope(1 if syl.net > 0 else -1)] * abs(syl.net)
        states += [CrossingState.UNRESOLVED] * syl.unresolved
        for state in states:
            if i % 2 == 1:
                builder.bottom_crossing(state, i)
            else:
                builder.right_crossing(state, i)
    builder.close(closure)
    diagram = builder.assemble()
    diagram.check_planar()
    if require_two_components and diagram.n_components != 2:
        raise ValueError(
            f"{closure.value} closure of {w} yields {diagram.n_components} "
            "component(s), not a two-component game diagram")
    return diagram


def two_component_shadow(w: Union[PseudoTangleWord, str]) -> ShadowDiagram:
    """Build the unique two-component closure of the word's shadow."""
    if isinstance(w, str):
        w = parse_word(w)
    _, closure = closure_components(w)
    if closure is None:
        raise ValueError(f"{w} has no two-component closure")
    return build_rational_shadow(w, closure)


def hopf_shadow() -> ShadowDiagram:
    """The two-crossing Hopf link shadow (denominator closure of (2))."""
    from .words import shadow_word

    return build_rational_shadow(shadow_word([2]), ClosureKind.DENOMINATOR)


def whitehead_shadow() -> ShadowDiagram:
    """The five-crossing Whitehead link shadow.

    Denominator closure of the (2,1,2) shadow: two size-2 twist regions
    of non-self-intersections separated by a single self-intersection.
    """
    from .words import shadow_word

    return build_rational_shadow(shadow_word([2, 1, 2]), ClosureKind.DENOMINATOR)
