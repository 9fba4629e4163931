"""Word-level calculus: parsing, classification, decomposition, rewriting,
fractions, closures, and the rational splittability verdict."""

import itertools

import pytest

from linkgame.rationals import ExtFrac, INFINITY, ZERO
from linkgame.words import (
    ClosureKind,
    DecompositionError,
    EndpointPairing,
    IsolatedSi,
    Kind,
    NsiString,
    StringCase,
    Syllable,
    WordError,
    classify_by_strand_tracing,
    classify_syllables,
    closure_components,
    count_intersections,
    decompose_word,
    parse_word,
    rational_splittability,
    reduce_word,
    render_word,
    shadow_word,
    statement_applications,
    tangle_fraction,
    word,
)

DECOMP_EXAMPLE = "(1,4,2,1,3,5,3,2,1,2,0,5,2,6,4)"


def enumerate_words(max_len=4, max_size=3):
    """All fully resolved words with n <= max_len and |net| <= max_size."""
    for n in range(1, max_len + 1):
        for nets in itertools.product(range(-max_size, max_size + 1), repeat=n):
            yield word(nets)


def enumerate_shadow_sizes(max_len=4, max_size=3):
    for n in range(1, max_len + 1):
        yield from itertools.product(range(0, max_size + 1), repeat=n)


# --- parsing ---------------------------------------------------------------

def test_parse_resolved_word():
    w = parse_word("(2,-3,-2,1)")
    assert w.nets == (2, -3, -2, 1)
    assert all(s.unresolved == 0 for s in w)


def test_parse_zero_word():
    w = parse_word("(0)")
    assert len(w) == 1 and w[0] == Syllable(0, 0)


def test_parse_mixed_syllable():
    w = parse_word("(1(2),-3)")
    assert w[0] == Syllable(1, 2)
    assert w[1] == Syllable(-3, 0)


def test_parse_unresolved_only_syllable():
    w = parse_word("((4),2)")
    assert w[0] == Syllable(0, 4)
    assert w[1] == Syllable(2, 0)


def test_parse_roundtrip_is_canonical():
    for text in ["(2,-3,-2,1)", "(0)", "(1(2),-3)", "((4),2)", "(0,4,0,6)"]:
        w = parse_word(text)
        assert parse_word(render_word(w)) == w


def test_parse_errors_have_positions():
    with pytest.raises(WordError) as e:
        parse_word("(1,,2)")
    assert e.value.position > 0
    with pytest.raises(WordError):
        parse_word("1,2")
    with pytest.raises(WordError):
        parse_word("(1(-2))")  # negative unresolved count rejected by grammar
    with pytest.raises(WordError):
        parse_word("()")


def test_negative_unresolved_rejected_in_constructor():
    with pytest.raises(ValueError):
        Syllable(0, -1)


# --- classification --------------------------------------------------------

def test_classify_worked_example_si_positions():
    w = parse_word(DECOMP_EXAMPLE)
    kinds = classify_syllables(w)
    si_positions = [i for i, k in enumerate(kinds, start=1) if k is Kind.SI]
    assert si_positions == [5, 8, 13, 15]


def test_classify_zero_word():
    assert classify_syllables(word("(0)")) == (Kind.NSI,)


def test_classify_2_m3_m2_1():
    assert classify_syllables(word((2, -3, -2, 1))) == (
        Kind.NSI, Kind.SI, Kind.NSI, Kind.SI)


def test_classify_agrees_with_strand_tracing_exhaustively():
    for sizes in enumerate_shadow_sizes():
        w = shadow_word(sizes)
        assert classify_syllables(w) == classify_by_strand_tracing(w), sizes
    for w in enumerate_words(max_len=3, max_size=3):
        assert classify_syllables(w) == classify_by_strand_tracing(w), w


# --- intersection counts ---------------------------------------------------

def test_counts_examples():
    assert count_intersections(word((2, -3, -2, 1))) == (4, 4)
    assert count_intersections(word("(0)")) == (0, 0)
    assert count_intersections(word((1, 1))) == (2, 0)


# --- decomposition ---------------------------------------------------------

def test_decompose_worked_example():
    d = decompose_word(parse_word(DECOMP_EXAMPLE))
    assert d.si_positions == (5, 8, 13, 15)
    strings = d.nsi_strings
    assert [s.indices for s in strings] == [(1, 2, 3, 4), (6, 7), (9, 10, 11, 12), (14,)]
    assert [s.case for s in strings] == [
        StringCase.ODD_EVENS_ODD,
        StringCase.TWO_ODD,
        StringCase.ODD_EVENS_ODD,
        StringCase.SINGLE_EVEN,
    ]
    assert d.starred() == "(1,4,2,1,3*,5,3,2*,1,2,0,5,2*,6,4*)"


def test_decompose_single_even():
    d = decompose_word(word((2,)))
    assert d.blocks == (NsiString((1,), StringCase.SINGLE_EVEN),)


def test_decompose_two_odd():
    d = decompose_word(word((1, 1)))
    assert d.blocks == (NsiString((1, 2), StringCase.TWO_ODD),)


def test_decompose_final_cases():
    assert decompose_word(word((3,))).blocks == (
        NsiString((1,), StringCase.FINAL_SINGLE_ODD),)
    assert decompose_word(word((1, 2))).blocks == (
        NsiString((1, 2), StringCase.FINAL_ODD_EVENS),)


def test_decompose_tiles_and_alternates_exhaustively():
    for sizes in enumerate_shadow_sizes():
        d = decompose_word(shadow_word(sizes))
        covered = []
        prev_si = False
        for b in d.blocks:
            if isinstance(b, IsolatedSi):
                assert not prev_si, sizes
                prev_si = True
                covered.append(b.index)
            else:
                prev_si = False
                covered.extend(b.indices)
        assert covered == list(range(1, len(sizes) + 1)), sizes


# --- rewriting -------------------------------------------------------------

def test_reduce_examples():
    assert reduce_word(word((1, 0, -1))) == word("(0)")
    assert reduce_word(word((1, 1))) == word((2,))
    assert reduce_word(word((0, 4, 0, 6))) == word("(0)")


def test_reduce_is_fixed_point():
    for w in enumerate_words(max_len=3, max_size=2):
        r = reduce_word(w)
        assert reduce_word(r) == r


def test_reduce_preserves_verdict():
    for w in enumerate_words(max_len=3, max_size=2):
        _, closure = closure_components(w)
        if closure is None:
            continue
        r = reduce_word(w)
        _, rclosure = closure_components(r)
        assert rclosure is not None, (w, r)
        assert rational_splittability(w).split == rational_splittability(r).split, (w, r)


# --- fractions -------------------------------------------------------------

def test_fraction_examples():
    assert tangle_fraction(word("(0)")) == INFINITY
    assert tangle_fraction(word((2,))) == ExtFrac(1, 2)
    assert tangle_fraction(word((2, -3, -2, 1))) == ExtFrac(7, 12)


def test_fraction_statement_invariance():
    """Statements 0-3 fix the fraction; 4 and 5 invert it."""
    for w in enumerate_words(max_len=3, max_size=2):
        f = tangle_fraction(w)
        for stmt, _, result in statement_applications(w):
            g = tangle_fraction(result)
            if stmt <= 3:
                assert g == f, (w, stmt, result)
            else:
                assert g == f.reciprocal(), (w, stmt, result)
            in_anchor = f.is_zero or f.is_infinite
            out_anchor = g.is_zero or g.is_infinite
            assert in_anchor == out_anchor


def test_fraction_mirror_negates():
    """Global mirroring negates the fraction and fixes {0, inf}, so the
    handedness convention cannot affect verdicts."""
    for w in enumerate_words(max_len=3, max_size=2):
        f = tangle_fraction(w)
        g = tangle_fraction(word(tuple(-n for n in w.nets)))
        assert g == -f or (f.is_infinite and g.is_infinite)


# --- closures --------------------------------------------------------------

def test_closure_examples():
    assert closure_components(word((2,))) == (
        EndpointPairing.LEFT_RIGHT, ClosureKind.DENOMINATOR)
    assert closure_components(word((2, -3, -2, 1)))[1] is ClosureKind.DENOMINATOR
    assert closure_components(word((1, 1)))[1] is ClosureKind.NUMERATOR


def test_even_nsi_iff_two_component_closure():
    for sizes in enumerate_shadow_sizes():
        w = shadow_word(sizes)
        nsi, _ = count_intersections(w)
        _, closure = closure_components(w)
        assert (nsi % 2 == 0) == (closure is not None), sizes


def test_pairing_matches_fraction_parity():
    """p even <-> numerator closure is the 2-component one; q even <->
    denominator; both odd <-> diagonal strands."""
    for w in enumerate_words(max_len=4, max_size=3):
        f = tangle_fraction(w)
        pairing, closure = closure_components(w)
        if f.p % 2 == 0:
            assert closure is ClosureKind.NUMERATOR and pairing is EndpointPairing.TOP_BOTTOM
        elif f.q % 2 == 0:
            assert closure is ClosureKind.DENOMINATOR and pairing is EndpointPairing.LEFT_RIGHT
        else:
            assert closure is None and pairing is EndpointPairing.DIAGONAL


# --- splittability ---------------------------------------------------------

def test_splittability_anchors():
    assert rational_splittability(word("(0)")).is_splittable
    assert rational_splittability(word((2,))).is_unsplittable
    assert rational_splittability(word((-2,))).is_unsplittable
    assert rational_splittability(word((1, -1))).is_splittable


def test_splittability_requires_two_component_closure():
    with pytest.raises(ValueError):
        rational_splittability(word((1,)))


def test_splittability_invariant_under_reduction_and_mirror():
    for w in enumerate_words(max_len=3, max_size=3):
        _, closure = closure_components(w)
        if closure is None:
            continue
        v = rational_splittability(w).split
        assert rational_splittability(reduce_word(w)).split == v
        mirrored = word(tuple(-n for n in w.nets))
        assert rational_splittability(mirrored).split == v
