"""Rational pseudotangle words: parsing, classification, decomposition,
rewriting, fractions, closures, and the rational splittability verdict.

A word is a sequence of syllables.  Syllable i (1-indexed) is a block of
twists on the bottom endpoints when i is odd and on the right endpoints
when i is even.  Each syllable carries a signed net of resolved
crossings (positive net = positive-slope overstrand) plus a count of
unresolved crossings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence, Union

from .rationals import INFINITY, ExtFrac, bottom_twist, right_twist
from .verdict import Verdict, splittable, unsplittable


class WordError(ValueError):
    """Raised for malformed word text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Syllable:
    """One twist block: signed resolved net plus unresolved count."""

    net: int = 0
    unresolved: int = 0

    def __post_init__(self):
        if self.unresolved < 0:
            raise ValueError("unresolved count must be nonnegative")

    @property
    def size(self) -> int:
        """Total number of crossings in the block."""
        return abs(self.net) + self.unresolved

    @property
    def is_zero(self) -> bool:
        return self.net == 0 and self.unresolved == 0

    @property
    def resolved(self) -> bool:
        return self.unresolved == 0


@dataclass(frozen=True)
class PseudoTangleWord:
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        object.__setattr__(self, "syllables", tuple(self.syllables))
        if not self.syllables:
            raise ValueError("a word has at least one syllable; use word('(0)')")

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __getitem__(self, i: int) -> Syllable:
        return self.syllables[i]

    @property
    def total_crossings(self) -> int:
        return sum(s.size for s in self.syllables)

    @property
    def fully_resolved(self) -> bool:
        return all(s.unresolved == 0 for s in self.syllables)

    @property
    def all_unresolved(self) -> bool:
        return all(s.net == 0 for s in self.syllables)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s.size for s in self.syllables)

    @property
    def nets(self) -> tuple[int, ...]:
        return tuple(s.net for s in self.syllables)

    def __str__(self) -> str:
        return render_word(self)


def word(nets: Union[str, Sequence[int]]) -> PseudoTangleWord:
    """Convenience constructor: parse text or wrap fully resolved nets."""
    if isinstance(nets, str):
        return parse_word(nets)
    return PseudoTangleWord(tuple(Syllable(net=n) for n in nets))


def shadow_word(sizes: Sequence[int]) -> PseudoTangleWord:
    """The all-unresolved word with the given syllable sizes."""
    return PseudoTangleWord(tuple(Syllable(0, s) for s in sizes))


# ---------------------------------------------------------------------------
# Grammar: '(' item (',' item)* ')' with item := int | int '(' uint ')'
#                                             | '(' uint ')'
# ---------------------------------------------------------------------------

_ITEM_RE = re.compile(
    r"""
    (?: (?P<net>[+-]?\d+) (?: \( (?P<unres>\d+) \) )?    # int or int(uint)
      | \( (?P<only_unres>\d+) \)                        # (uint)
    )
    """,
    re.VERBOSE,
)


def parse_word(text: str) -> PseudoTangleWord:
    """Parse a pseudotangle word such as ``(2,-3,-2,1)`` or ``(1(2),-3)``.

    Whitespace is ignored.  The customary omitted-zero notation is
    normalized into explicit syllables: ``(3)`` inside a word means a
    syllable with 3 unresolved crossings and resolved net 0.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped.startswith("("):
        raise WordError("expected '('", 0)
    if not stripped.endswith(")"):
        raise WordError("expected ')'", len(stripped))
    body = stripped[1:-1]
    if body == "":
        raise WordError("empty word; write (0)", 1)
    syllables = []
    pos = 1
    for chunk in body.split(","):
        if chunk == "":
            raise WordError("empty syllable", pos)
        m = _ITEM_RE.fullmatch(chunk)
        if m is None:
            raise WordError(f"bad syllable {chunk!r}", pos)
        if m.group("only_unres") is not None:
            syllables.append(Syllable(0, int(m.group("only_unres"))))
        else:
            unres = int(m.group("unres")) if m.group("unres") else 0
            syllables.append(Syllable(int(m.group("net")), unres))
        pos += len(chunk) + 1
    return PseudoTangleWord(tuple(syllables))


def render_word(w: PseudoTangleWord, stars: Sequence[int] = ()) -> str:
    """Render with the customary omission conventions.

    ``stars`` lists 1-indexed syllable positions to mark with ``*``
    (the decomposition's isolated SI syllables).
    """
    starset = set(stars)
    parts = []
    for i, s in enumerate(w.syllables, start=1):
        if s.is_zero:
            text = "0"
        elif s.unresolved == 0:
            text = str(s.net)
        elif s.net == 0:
            text = f"({s.unresolved})"
        else:
            text = f"{s.net}({s.unresolved})"
        if i in starset:
            text += "*"
        parts.append(text)
    return "(" + ",".join(parts) + ")"


# ---------------------------------------------------------------------------
# SI / NSI classification
# ---------------------------------------------------------------------------


class Kind(Enum):
    SI = "SI"
    NSI = "NSI"


def classify_syllables(w: PseudoTangleWord) -> tuple[Kind, ...]:
    """Classify each syllable as SI or NSI by the forward twist rules.

    The rules, in terms of syllable crossing-count parity:
      * the first syllable is NSI;
      * the second is SI iff the first has even size;
      * a syllable after an SI is NSI;
      * after (SI, NSI) the next is SI iff the NSI between them is even;
      * after (NSI, NSI) the next is SI iff the second is odd.

    A zero-size syllable flows through the same rules (its parity is
    even), so it picks up a definite, possibly vacuous, kind.
    """
    n = len(w)
    kinds: list[Kind] = [Kind.NSI]
    if n >= 2:
        kinds.append(Kind.SI if w[0].size % 2 == 0 else Kind.NSI)
    for i in range(2, n):
        if kinds[i - 1] is Kind.SI:
            kinds.append(Kind.NSI)
        elif kinds[i - 2] is Kind.SI:
            kinds.append(Kind.SI if w[i - 1].size % 2 == 0 else Kind.NSI)
        else:
            kinds.append(Kind.SI if w[i - 1].size % 2 == 1 else Kind.NSI)
    return tuple(kinds)


def classify_by_strand_tracing(w: PseudoTangleWord) -> tuple[Kind, ...]:
    """Independent classification: simulate the twist construction.

    Tracks which of the two tangle strands sits at each of the four
    corner endpoints while the word is built.  A block's crossings are
    self-intersections exactly when the two corners being twisted are
    occupied by the same strand when the block starts.
    """
    kinds = []
    for i, corners in enumerate(_corner_states(w)):
        if i % 2 == 0:  # odd 1-indexed position: bottom twists
            a, b = corners["SW"], corners["SE"]
        else:
            a, b = corners["NE"], corners["SE"]
        kinds.append(Kind.SI if a == b else Kind.NSI)
    return tuple(kinds)


def _corner_states(w: PseudoTangleWord):
    """Yield the corner-occupancy state seen by each syllable in turn.

    Strand 0 starts on the left (NW, SW), strand 1 on the right
    (NE, SE).  Every crossing swaps the two endpoints being twisted, so
    only size parity matters.  The state after the last syllable is
    obtained from _final_corners.
    """
    corners = {"NW": 0, "SW": 0, "NE": 1, "SE": 1}
    for i, s in enumerate(w.syllables):
        yield dict(corners)
        _advance_corners(corners, i, s)


def _advance_corners(corners: dict, index: int, s: Syllable) -> None:
    if s.size % 2 == 1:
        if index % 2 == 0:
            corners["SW"], corners["SE"] = corners["SE"], corners["SW"]
        else:
            corners["NE"], corners["SE"] = corners["SE"], corners["NE"]


def _final_corners(w: PseudoTangleWord) -> dict:
    corners = {"NW": 0, "SW": 0, "NE": 1, "SE": 1}
    for i, s in enumerate(w.syllables):
        _advance_corners(corners, i, s)
    return corners


def count_intersections(w: PseudoTangleWord) -> tuple[int, int]:
    """Return (nsi_count, si_count): crossing totals by syllable kind."""
    kinds = classify_syllables(w)
    nsi = sum(s.size for s, k in zip(w.syllables, kinds) if k is Kind.NSI)
    si = sum(s.size for s, k in zip(w.syllables, kinds) if k is Kind.SI)
    return nsi, si


# ---------------------------------------------------------------------------
# Decomposition into NSI strings alternating with isolated SI syllables
# ---------------------------------------------------------------------------


class StringCase(Enum):
    SINGLE_EVEN = "single-even"
    TWO_ODD = "two-odd"
    ODD_EVENS_ODD = "odd-evens-odd"
    FINAL_SINGLE_ODD = "final-single-odd"
    FINAL_ODD_EVENS = "final-odd-evens"


@dataclass(frozen=True)
class NsiString:
    """Indices (1-based) of a maximal run of NSI syllables, plus its case."""

    indices: tuple[int, ...]
    case: StringCase


@dataclass(frozen=True)
class IsolatedSi:
    index: int  # 1-based


Block = Union[NsiString, IsolatedSi]


class DecompositionError(RuntimeError):
    """A word violated the NSI-string taxonomy: an implementation bug."""


@dataclass(frozen=True)
class Decomposition:
    word: PseudoTangleWord
    blocks: tuple[Block, ...]

    @property
    def si_positions(self) -> tuple[int, ...]:
        return tuple(b.index for b in self.blocks if isinstance(b, IsolatedSi))

    @property
    def nsi_strings(self) -> tuple[NsiString, ...]:
        return tuple(b for b in self.blocks if isinstance(b, NsiString))

    def starred(self) -> str:
        return render_word(self.word, stars=self.si_positions)


def _tag_run(sizes: Sequence[int], is_final: bool) -> StringCase:
    parities = [s % 2 for s in sizes]
    if len(parities) == 1:
        if parities[0] == 0:
            return StringCase.SINGLE_EVEN
        if is_final:
            return StringCase.FINAL_SINGLE_ODD
        raise DecompositionError("non-final single odd NSI syllable")
    if parities[0] != 1:
        raise DecompositionError("multi-syllable NSI string starting even")
    if len(parities) == 2 and parities == [1, 1]:
        return StringCase.TWO_ODD
    if any(p == 1 for p in parities[1:-1]):
        raise DecompositionError("odd syllable strictly inside an NSI string")
    if parities[-1] == 1:
        return StringCase.ODD_EVENS_ODD
    if is_final:
        return StringCase.FINAL_ODD_EVENS
    raise DecompositionError("non-final NSI string ending in an even run")


def decompose_word(w: PseudoTangleWord) -> Decomposition:
    """Split a word into NSI strings alternating with isolated SI syllables.

    Raises DecompositionError if the computed kinds violate the taxonomy
    (adjacent SI syllables, or a string shape outside the five cases);
    such a violation indicates a classification bug, not bad input.
    """
    kinds = classify_syllables(w)
    blocks: list[Block] = []
    run: list[int] = []
    last_string_at = -1
    for i, kind in enumerate(kinds, start=1):
        if kind is Kind.NSI:
            run.append(i)
        else:
            if not run and blocks and isinstance(blocks[-1], IsolatedSi):
                raise DecompositionError("adjacent isolated SI syllables")
            if run:
                blocks.append(NsiString(tuple(run), StringCase.SINGLE_EVEN))
                last_string_at = len(blocks) - 1
                run = []
            blocks.append(IsolatedSi(i))
    if run:
        blocks.append(NsiString(tuple(run), StringCase.SINGLE_EVEN))
        last_string_at = len(blocks) - 1
    if last_string_at < 0:
        raise DecompositionError("word with no NSI string")

    tagged: list[Block] = []
    for j, b in enumerate(blocks):
        if isinstance(b, NsiString):
            sizes = [w[i - 1].size for i in b.indices]
            tagged.append(NsiString(b.indices, _tag_run(sizes, j == last_string_at)))
        else:
            tagged.append(b)

    covered = [i for b in tagged for i in (b.indices if isinstance(b, NsiString) else (b.index,))]
    if covered != list(range(1, len(w) + 1)):
        raise DecompositionError("blocks do not tile the word")
    return Decomposition(w, tuple(tagged))


# ---------------------------------------------------------------------------
# Tangle equivalences (rewrite statements 0-5) and reduction
# ---------------------------------------------------------------------------

_ZERO = Syllable(0, 0)


def statement_applications(w: PseudoTangleWord) -> list[tuple[int, int, PseudoTangleWord]]:
    """Every single-statement rewrite available on ``w``.

    Returns (statement, position, result) triples, 0-indexed positions.
    Statements 0-2 only touch explicit zero syllables and apply to
    partially resolved words; statements 3-5 change resolved crossing
    counts and require a fully resolved word.
    """
    out = []
    syl = w.syllables
    n = len(syl)
    if n >= 2 and syl[-1].is_zero:
        out.append((0, n - 1, PseudoTangleWord(syl[:-1])))
    for i in range(1, n - 1):
        if syl[i].is_zero:
            merged = Syllable(syl[i - 1].net + syl[i + 1].net,
                              syl[i - 1].unresolved + syl[i + 1].unresolved)
            out.append((1, i - 1, PseudoTangleWord(syl[:i - 1] + (merged,) + syl[i + 2:])))
    for i in range(n - 1):
        if syl[i].is_zero and syl[i + 1].is_zero:
            rest = syl[:i] + syl[i + 2:]
            out.append((2, i, PseudoTangleWord(rest if rest else (_ZERO,))))
    if w.fully_resolved:
        if n >= 2 and syl[0].is_zero and syl[1].net != 0:
            step = -1 if syl[1].net > 0 else 1
            out.append((3, 0, PseudoTangleWord(
                (syl[0], Syllable(syl[1].net + step, 0)) + syl[2:])))
        if n >= 2 and syl[0] == Syllable(1, 0):
            out.append((4, 0, PseudoTangleWord(
                (Syllable(syl[1].net + 1, syl[1].unresolved),) + syl[2:])))
        if n >= 2 and syl[0] == Syllable(-1, 0):
            out.append((5, 0, PseudoTangleWord(
                (Syllable(syl[1].net - 1, syl[1].unresolved),) + syl[2:])))
    return out


def reduce_word(w: PseudoTangleWord) -> PseudoTangleWord:
    """Rewrite to a fixed point of statements 0-5.

    Scheduler: statement 0 first, then the leftmost applicable among
    1-5 (ties broken by statement number).  Crossing count plus word
    length strictly decreases at each step, so this terminates.  The
    splittability verdict of the two-component closure is preserved.
    """
    current = w
    while True:
        apps = statement_applications(current)
        if not apps:
            return current
        zero_drops = [a for a in apps if a[0] == 0]
        if zero_drops:
            current = zero_drops[0][2]
            continue
        stmt, _, result = min(apps, key=lambda a: (a[1], a[0]))
        current = result


# ---------------------------------------------------------------------------
# Fractions, closures, and the rational splittability verdict
# ---------------------------------------------------------------------------


def tangle_fraction(w: PseudoTangleWord) -> ExtFrac:
    """Evaluate the word's extended-rational fraction.

    Starting from the vertical two-strand tangle (value infinity), each
    bottom block maps f -> 1/(net + 1/f) and each right block maps
    f -> f + net.  Every map is total over the extended rationals.
    """
    if not w.fully_resolved:
        raise ValueError("tangle_fraction requires a fully resolved word")
    f = INFINITY
    for i, s in enumerate(w.syllables):
        f = bottom_twist(f, s.net) if i % 2 == 0 else right_twist(f, s.net)
    return f


class EndpointPairing(Enum):
    TOP_BOTTOM = "top-bottom"    # strands NW-NE and SW-SE
    LEFT_RIGHT = "left-right"    # strands NW-SW and NE-SE
    DIAGONAL = "diagonal"        # strands NW-SE and NE-SW


class ClosureKind(Enum):
    NUMERATOR = "numerator"
    DENOMINATOR = "denominator"


def closure_components(w: PseudoTangleWord) -> tuple[EndpointPairing, Optional[ClosureKind]]:
    """Which endpoint pairing the word realizes, and which closure (if
    any) yields a two-component diagram.

    The numerator closure joins top with top and bottom with bottom;
    the denominator joins left with left and right with right.  Exactly
    one closure is two-component unless the strands run diagonally, in
    which case both closures are knots.
    """
    corners = _final_corners(w)
    mate = next(c for c in ("SW", "NE", "SE") if corners[c] == corners["NW"])
    if mate == "SW":
        return EndpointPairing.LEFT_RIGHT, ClosureKind.DENOMINATOR
    if mate == "NE":
        return EndpointPairing.TOP_BOTTOM, ClosureKind.NUMERATOR
    return EndpointPairing.DIAGONAL, None


def rational_splittability(w: PseudoTangleWord) -> Verdict:
    """Decide splittability of the word's two-component closure.

    The closure is splittable iff the fraction is 0 or infinity; the
    (0) and (+-2) anchors follow from word reductions, and nontrivial
    two-bridge closures are non-split (standard classification).  Never
    returns UNKNOWN.
    """
    if not w.fully_resolved:
        raise ValueError("rational_splittability requires a fully resolved word")
    _, closure = closure_components(w)
    if closure is None:
        raise ValueError(f"{w} has no two-component closure")
    f = tangle_fraction(w)
    if f.is_zero or f.is_infinite:
        return splittable(certificate=f, detail=f"fraction {f}")
    return unsplittable(certificate=f, detail=f"fraction {f}")
