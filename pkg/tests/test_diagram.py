"""Shadow diagram structure: parsing, faces, components, signs, linking
numbers, twist regions, and checkerboard colorings."""

import itertools
from fractions import Fraction

import pytest

from linkgame.construct import (
    build_rational_shadow,
    hopf_shadow,
    two_component_shadow,
    whitehead_shadow,
)
from linkgame.diagram import (
    CrossingState,
    PDError,
    canonical_orientation,
    checkerboard,
    classify_crossing,
    crossing_sign,
    parse_pd,
    pseudo_linking_number,
    render_pd,
    twist_regions,
)
from linkgame.words import (
    ClosureKind,
    Kind,
    classify_syllables,
    rational_splittability,
    shadow_word,
    word,
)

A = CrossingState.RESOLVED_A
B = CrossingState.RESOLVED_B

KINK_PD = "X 1,2,2,3 ?\nX 3,1,4,4 ?\n"  # circle with two kinks


def resolve_all(diagram, states):
    out = diagram
    for cid, st in zip(out.crossing_ids, states):
        out = out.with_state(cid, st)
    return out


# --- parsing ----------------------------------------------------------------

def test_parse_pd_hopf_fixture():
    d = parse_pd(render_pd(hopf_shadow()))
    assert d.n_components == 2
    assert len(d.nsi_ids()) == 2


def test_parse_pd_whitehead_fixture():
    d = parse_pd(render_pd(whitehead_shadow()))
    assert d.n_components == 2
    assert len(d.nsi_ids()) == 4
    assert len(d.si_ids()) == 1


def test_parse_pd_fixture_files():
    import pathlib

    data = pathlib.Path(__file__).parent / "data"
    wh = parse_pd((data / "whitehead.pd").read_text())
    assert (wh.n_components, len(wh.nsi_ids()), len(wh.si_ids())) == (2, 4, 1)
    hopf = parse_pd((data / "hopf.pd").read_text())
    assert (hopf.n_components, len(hopf.nsi_ids())) == (2, 2)


def test_parse_pd_rejects_single_component_in_game_mode():
    with pytest.raises(PDError):
        parse_pd(KINK_PD, require_two_components=True)


def test_parse_pd_rejects_dangling_arc():
    with pytest.raises(PDError, match="dangling"):
        parse_pd("X 1,2,3,4 ?\n")


def test_parse_pd_rejects_nonplanar_rotation():
    # two crossings joined by four parallel arcs, one rotation flipped:
    # realizes a rotation system of genus 1
    bad = "X 1,2,3,4 ?\nX 1,2,3,4 ?\n"
    with pytest.raises(PDError, match="non-planar"):
        parse_pd(bad)


def test_parse_pd_comments_labels_loops():
    text = render_pd(hopf_shadow()) + "# trailing comment\nO extra\n"
    d = parse_pd(text)
    assert d.n_components == 3
    assert d.component_names[0] == "A"


# --- crossing classification -------------------------------------------------

def test_whitehead_center_crossing_is_si():
    d = whitehead_shadow()
    assert classify_crossing(d, 2) == "SI"
    for cid in (0, 1, 3, 4):
        assert classify_crossing(d, cid) == "NSI"


def test_hopf_crossings_are_nsi():
    d = hopf_shadow()
    assert all(classify_crossing(d, cid) == "NSI" for cid in d.crossing_ids)


def test_built_syllable_classification_agrees_with_word_rules():
    for sizes in itertools.product(range(0, 4), repeat=3):
        w = shadow_word(sizes)
        from linkgame.words import closure_components

        _, closure = closure_components(w)
        if closure is None:
            continue
        d = build_rational_shadow(w, closure)
        kinds = classify_syllables(w)
        for c in d.crossings:
            assert classify_crossing(d, c.id) == kinds[c.syllable - 1].value


def test_classify_unknown_crossing():
    with pytest.raises(KeyError):
        classify_crossing(hopf_shadow(), 99)


# --- crossing signs and linking number ---------------------------------------

def test_hopf_sign_enumeration_oracle():
    """Same-sign resolution pairs occur exactly when the diagram is
    unsplittable, for every resolution and orientation."""
    shadow = hopf_shadow()
    for states in itertools.product((A, B), repeat=2):
        d = resolve_all(shadow, states)
        nets = sum(1 if s is A else -1 for s in states)
        verdict = rational_splittability(word((nets,)))
        for rev in ((), (0,), (1,), (0, 1)):
            o = canonical_orientation(d, reverse=rev)
            signs = [crossing_sign(d, o, cid) for cid in d.crossing_ids]
            assert (signs[0] == signs[1]) == verdict.is_unsplittable


def test_sign_flips_when_one_component_reverses():
    d = resolve_all(hopf_shadow(), (A, B))
    base = canonical_orientation(d)
    flipped = canonical_orientation(d, reverse=(1,))
    for cid in d.crossing_ids:
        assert crossing_sign(d, base, cid) == -crossing_sign(d, flipped, cid)


def test_sign_requires_resolution():
    d = hopf_shadow()
    with pytest.raises(ValueError):
        crossing_sign(d, canonical_orientation(d), 0)


def test_same_slope_same_sign_within_twist_region():
    """Two crossings of one twist region get equal signs iff they carry
    equal slopes, under any orientation."""
    for w in (shadow_word([4]), shadow_word([2, 1, 2]), shadow_word([2, 2])):
        shadow = two_component_shadow(w)
        regions = [r for r in twist_regions(shadow) if r.size >= 2]
        for states in itertools.product((A, B), repeat=shadow.n_crossings):
            d = resolve_all(shadow, states)
            o = canonical_orientation(d)
            for r in regions:
                for c1, c2 in itertools.combinations(r.crossings, 2):
                    s1 = d.crossing_by_id[c1].state
                    s2 = d.crossing_by_id[c2].state
                    same_slope = s1 is s2
                    same_sign = (crossing_sign(d, o, c1) ==
                                 crossing_sign(d, o, c2))
                    assert same_slope == same_sign


def test_plk_zero_on_shadow_and_si_only():
    d = whitehead_shadow()
    assert pseudo_linking_number(d) == 0
    assert pseudo_linking_number(d.with_state(2, A)) == 0  # SI resolution


def test_plk_single_nsi_is_half():
    d = hopf_shadow().with_state(0, A)
    assert abs(pseudo_linking_number(d)) == Fraction(1, 2)


def test_plk_invariant_under_reversing_both_components():
    d = resolve_all(whitehead_shadow(), (A, B, A, B, A))
    o1 = canonical_orientation(d)
    o2 = canonical_orientation(d, reverse=(0, 1))
    assert pseudo_linking_number(d, o1) == pseudo_linking_number(d, o2)


def test_plk_requires_two_components():
    d = parse_pd(KINK_PD)
    with pytest.raises(ValueError):
        pseudo_linking_number(d)


def test_plk_step_by_half_on_nsi_and_zero_on_si():
    shadow = whitehead_shadow()
    o = canonical_orientation(shadow)
    partial = shadow.with_state(0, A).with_state(3, B)
    for cid in partial.unresolved_ids():
        before = pseudo_linking_number(partial, o)
        for st in (A, B):
            after = pseudo_linking_number(partial.with_state(cid, st), o)
            expected = Fraction(1, 2) if classify_crossing(partial, cid) == "NSI" else 0
            assert abs(after - before) == expected


# --- twist regions ------------------------------------------------------------

def test_twist_regions_examples():
    assert [r.size for r in twist_regions(hopf_shadow())] == [2]
    wh_sizes = sorted(r.size for r in twist_regions(whitehead_shadow()))
    assert wh_sizes == [1, 2, 2]
    d = two_component_shadow(word((2, -3, -2, 1)))
    assert sorted(r.size for r in twist_regions(d)) == [1, 2, 2, 3]
    # closure must not merge distinct syllables into one region here
    for r in twist_regions(d):
        syllables = {d.crossing_by_id[c].syllable for c in r.crossings}
        assert len(syllables) == 1


def test_twist_regions_partition():
    for w in (shadow_word([4]), shadow_word([2, 1, 2]), shadow_word([1, 2, 1])):
        d = two_component_shadow(w)
        seen = [c for r in twist_regions(d) for c in r.crossings]
        assert sorted(seen) == sorted(d.crossing_ids)


# --- checkerboard ---------------------------------------------------------------

def test_checkerboard_plain_circle():
    from linkgame.diagram import FreeLoop, ShadowDiagram

    circle = ShadowDiagram([], [], [FreeLoop(0)])
    coloring = checkerboard(circle)
    assert coloring.colors == ("black", "white")


def test_checkerboard_kink_circle():
    d = parse_pd(KINK_PD)
    coloring = checkerboard(d)
    faces = d.faces()
    assert coloring.colors[coloring.outer_face] == "white"
    # proper: faces sharing an arc differ
    for i, f in enumerate(faces):
        for j, g in enumerate(faces):
            if i >= j:
                continue
            shared = {d._arc_at[e] for e in f} & {d._arc_at[e] for e in g}
            if shared:
                assert coloring.colors[i] != coloring.colors[j]


def test_checkerboard_unique_given_outer():
    d = parse_pd(KINK_PD)
    c1 = checkerboard(d)
    c2 = checkerboard(d, outer_face=c1.outer_face)
    assert c1 == c2


def test_checkerboard_rejects_two_components():
    with pytest.raises(ValueError):
        checkerboard(hopf_shadow())


# --- structural invariants -----------------------------------------------------

def test_even_nsi_on_built_two_component_shadows():
    for n in range(1, 4):
        for sizes in itertools.product(range(0, 4), repeat=n):
            w = shadow_word(sizes)
            from linkgame.words import closure_components

            _, closure = closure_components(w)
            if closure is None:
                continue
            d = build_rational_shadow(w, closure)
            assert len(d.nsi_ids()) % 2 == 0
            assert d.n_components == 2
            d.check_planar()


def test_builder_rejects_one_component_closures():
    with pytest.raises(ValueError):
        build_rational_shadow(shadow_word([1, 1]), ClosureKind.DENOMINATOR)


def test_builder_crossing_counts_and_backrefs():
    d = build_rational_shadow(shadow_word([2, 1, 2]), ClosureKind.DENOMINATOR)
    assert d.n_crossings == 5
    assert [d.crossing_by_id[c].syllable for c in d.crossing_ids] == [1, 1, 2, 3, 3]
    assert d.has_coordinates()
