import math
import pytest
from hypothesis import given, strategies as st

from tilelab import data_path
from tilelab.engine import validate
from tilelab.model import EdgeDecoration, TilesetError
from tilelab.search import enumerate_indices
from tilelab.substitution import (MORPHISM, CoarseOriented, CoarseTable, CoarseTile, CoarseTiling, CoarseTileset,
                                  GapWord, SubstitutionError, anchor_offset, discover_rules, expand, generate_plane_patch,
                                  iterate, iterate_1d, line_sequence, load_bits, load_rules, oeis_match, parse_coarse,
                                  segments_match, serialize_coarse, serialize_rules, smallest_period, substitute_1d,
                                  thickness_redundancy, to_base, word_from_bits)

# Base patch sizes of generate_plane_patch(seed, 2), frozen from a run.
PATCH_K2 = {"2x2a": (70, 70), "3x2a": (99, 70), "3x3a": (99, 99)}


def test_coarse_file_round_trip(cts, ts):
    text = serialize_coarse(cts)
    again = parse_coarse(text, ts)
    assert again == cts and serialize_coarse(again) == text


def test_coarse_parse_errors(ts):
    with pytest.raises(TilesetError):
        parse_coarse("tile a size 2x2\n", ts)
    with pytest.raises(TilesetError):
        parse_coarse("coarse c\ntile a size 2\n", ts)
    with pytest.raises(TilesetError):
        parse_coarse("coarse c\ntile a size 1x1\n  edge N colors=0 thickness=3\n", ts)


def test_coarse_tiles_carry_no_corners(cts):
    assert len(cts) == 3
    for t in cts.tiles:
        assert all(isinstance(e, EdgeDecoration) for side in t.edges for e in side)


def test_segment_matching_reverses():
    a = (EdgeDecoration(0, 2), EdgeDecoration(1, 3))
    assert segments_match(a, (EdgeDecoration(1, 3), EdgeDecoration(0, 4)), 6)
    assert not segments_match(a, (EdgeDecoration(0, 4), EdgeDecoration(1, 3)), 6)
    assert not segments_match(a, a[:1], 6)


def test_thickness_is_redundant_given_colors(cts):
    rep = thickness_redundancy(cts)
    assert rep.implied and rep.pairs_checked > 0


def test_empty_coarse_set():
    from tilelab.substitution import derive_coarse_tileset
    assert len(derive_coarse_tileset([])) == 0


def test_rules_load_and_round_trip(cts, rules):
    assert sorted(rules) == ["2x2a", "3x2a", "3x3a"]
    assert load_rules(serialize_rules(rules, cts), cts) == rules


def test_discovered_rules_match_shipped(cts, rules):
    assert discover_rules(cts) == rules


def two_tile_set():
    """Two 1x1 coarse tiles that only meet tiles of the other color."""
    def tile(name, c):
        side = (EdgeDecoration(c, 3),)
        return CoarseTile(name, 1, 1, (side, side, side, side))
    return CoarseTileset("pair", (tile("a", 0), tile("b", 1)))


def test_rule_with_color_clash_rejected():
    cts = two_tile_set()
    text = "rule a anchor 0,0\ntiling r 2 1 tileset=pair\nar0 br0\nrule b anchor 0,0\ntiling r 1 1 tileset=pair\nbr0\n"
    with pytest.raises(SubstitutionError, match="seam"):
        load_rules(text, cts)


def test_rule_with_wrong_anchor_rejected(cts, rules):
    text = serialize_rules(rules, cts).replace("rule 3x3a anchor 1,1", "rule 3x3a anchor 0,0")
    with pytest.raises(SubstitutionError, match="anchor"):
        load_rules(text, cts)


def test_missing_rule_rejected(cts, rules):
    text = serialize_rules({k: v for k, v in rules.items()}, cts)
    head = text.split("rule 3x3a")[0]
    with pytest.raises(SubstitutionError, match="no rule"):
        load_rules(head, cts)


def test_single_tile_expands_verbatim(cts, rules, ctable):
    for name, rule in rules.items():
        p = CoarseTiling(1, 1, (CoarseOriented(name, 0),))
        assert expand(p, rules, cts, ctable) == rule.expansion


def test_rotated_seed_expands_to_rotated_rule(cts, rules, ctable):
    p = CoarseTiling(1, 1, (CoarseOriented("3x2a", 1),))
    e = expand(p, rules, cts, ctable)
    assert e == rules["3x2a"].expansion.rotated(1)


def test_two_step_contains_one_step_at_anchor(cts, rules, ctable):
    for name, rule in rules.items():
        one = iterate(CoarseOriented(name, 0), 1, rules, cts, ctable)
        two = expand(one, rules, cts, ctable)
        x, y = rule.anchor
        r0, c0 = anchor_offset(one, rules, cts, y, x)
        ex = rules[one.at(y, x).name].rotated(one.at(y, x).rot)[0]
        block = [two.rows()[r0 + i][c0:c0 + ex.width] for i in range(ex.height)]
        assert CoarseTiling.from_rows(block) == one


def test_expansion_seam_error_names_cells(cts, rules):
    bad = CoarseTiling.from_rows([[CoarseOriented("2x2a", 0), CoarseOriented("3x3a", 0)]])
    with pytest.raises(SubstitutionError):
        expand(bad, rules, cts)


@pytest.mark.parametrize("seed", sorted(PATCH_K2))
def test_plane_patch_k2(seed, cts, rules, ctable):
    g = generate_plane_patch(seed, 2, rules, cts, ctable)
    assert (g.width, g.height) == PATCH_K2[seed]
    assert validate(g) == []


def test_plane_patch_k0_is_content(cts, rules):
    g = generate_plane_patch("3x3a", 0, rules, cts)
    assert g == cts.by_name("3x3a").content
    with pytest.raises(ValueError):
        generate_plane_patch("3x3a", -1, rules, cts)


def test_patch_grows_with_k(cts, rules, ctable):
    sizes = [generate_plane_patch("2x2a", k, rules, cts, ctable).width for k in range(3)]
    assert sizes == sorted(set(sizes))


def test_crop_17_is_valid(cts, rules, ctable):
    g = generate_plane_patch("3x3a", 3, rules, cts, ctable)
    crop = g.crop(100, 100, 17, 17)
    assert len(crop.cells) == 289 and validate(crop) == []


def test_small_coarse_tilings_expand_to_valid_base(cts, ctable):
    n = 0
    for w in range(1, 4):
        for h in range(1, 4):
            found, _, _ = enumerate_indices(ctable, w, h)
            for idx in found:
                p = CoarseTiling(w, h, tuple(ctable.tiles[i] for i in idx))
                assert validate(to_base(p, cts, ctable)) == []
                n += 1
    assert n > 0


def test_line_sequence_of_base_and_coarse_agree(cts, rules, ctable):
    p = iterate(CoarseOriented("3x2a", 0), 2, rules, cts, ctable)
    base = to_base(p, cts, ctable)
    for axis in "xy":
        assert line_sequence(base, axis) == line_sequence(p, axis, cts)


def test_gap_word_encoding():
    assert word_from_bits("101") == "S"
    assert word_from_bits("100101") == "DS"
    assert GapWord("DS").bits() == "100101"
    with pytest.raises(SubstitutionError):
        word_from_bits("10001")
    with pytest.raises(ValueError):
        GapWord("SX")


def test_morphism_examples():
    assert substitute_1d("S") == "SDSDS"
    assert substitute_1d("D") == "SDSDSDS"
    assert substitute_1d("SD") == "SDSDS" + "SDSDSDS"
    assert len(substitute_1d("SD")) == 12


@given(st.text(alphabet="SD", max_size=30))
def test_morphism_length(w):
    assert len(substitute_1d(w)) == 5 * w.count("S") + 7 * w.count("D")


@given(st.integers(0, 4))
def test_fixed_point_prefix_stability(k):
    assert iterate_1d("S", k + 1).startswith(iterate_1d("S", k))


def test_language_has_no_dd_or_sss():
    w = iterate_1d("S", 5)
    assert "DD" not in w and "SSS" not in w


def test_period_examples():
    assert smallest_period("SDSD", 3) == 2
    assert smallest_period("SDSDS", 4) == 2
    assert smallest_period(iterate_1d("S", 6), 64) is None
    with pytest.raises(ValueError):
        smallest_period("SD", 2)


def test_reference_match_examples():
    w = iterate_1d("S", 3)
    own = [int(b) for b in w.bits()]
    assert oeis_match(w, own) == 0
    assert oeis_match(w, [1] * 60) is None
    with pytest.raises(ValueError):
        oeis_match(w, own[:10], window=20)


def test_load_bits_formats():
    assert load_bits("# c\n1 0 1\n") == [1, 0, 1]
    assert load_bits("0 1\n1 0\n") == [1, 0]
    assert load_bits("0110\n") == [0, 1, 1, 0]
    with pytest.raises(ValueError):
        load_bits("012\n")


def test_frequency_ratio_moves_monotonically():
    ratios = [w.count("D") / w.count("S") for w in (iterate_1d("S", k) for k in range(1, 6))]
    diffs = [b - a for a, b in zip(ratios, ratios[1:])]
    assert all(abs(d) > 0 for d in diffs)
    assert all(abs(b) < abs(a) for a, b in zip(diffs, diffs[1:]))


def test_morphism_table():
    assert MORPHISM == {"S": "SDSDS", "D": "SDSDSDS"}


def _floor_m_sqrt2(m: int) -> int:
    r = math.isqrt(2 * m * m)
    if m >= 0:
        return r
    return -r - 1


def _mechanical_bits(n: int) -> str:
    # slope sqrt(2) - 1, intercept (3 - sqrt(2)) / 2, exact integer arithmetic
    def f(k):
        return (_floor_m_sqrt2(2 * k - 1) + 3 - 2 * k) // 2
    return "".join(str(f(k + 1) - f(k)) for k in range(n))


def test_bits_are_the_sqrt2_mechanical_word():
    bits = iterate_1d("S", 6).bits()
    assert len(bits) > 5000
    assert bits[:5000] == _mechanical_bits(5000)


def test_reference_asset_is_the_mechanical_word():
    ref = load_bits(data_path("a159684.bits").read_text(encoding="utf-8"))
    assert "".join(map(str, ref)) == _mechanical_bits(len(ref))


def test_bits_are_balanced():
    b = iterate_1d("S", 5).bits()
    for n in range(1, 120):
        ones = {b[i:i + n].count("1") for i in range(len(b) - n)}
        assert max(ones) - min(ones) <= 1
