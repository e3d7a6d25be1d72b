import pytest

from tilelab.engine import GridTiling, line_classes, validate
from tilelab.model import EdgeDecoration, OrientedTile, TilePrototype, Tileset
from tilelab.search import SearchConfig, count_tilings, enumerate_tilings
from tilelab.zones import (DecompositionError, canonical_form, corner_redundancy_check, decompose,
                           discover_supertiles, from_form, perimeter, surroundable, zone_contents)


def rows(*lines):
    return [[OrientedTile.from_token(t) for t in line.split()] for line in lines]


def test_single_cell_has_no_cuts(ts):
    d = decompose(GridTiling(1, 1, (OrientedTile(2, 0),), ts))
    assert d.xcuts == () and d.ycuts == () and len(d.zones) == 1


def test_decompose_reassembles(ts):
    g = GridTiling.from_rows(rows("0r1 0r0 0r1 1r0 0r0", "0r2 0r3 0r2 1r2 0r3"), ts)
    d = decompose(g)
    assert d.xcuts == (2,) and d.ycuts == ()
    assert d.column_widths == [2, 3] and d.row_heights == [2]
    cells = []
    for r in range(g.height):
        for zone in d.zones[0]:
            cells.extend(zone.rows()[r])
    assert tuple(cells) == g.cells


def test_decompose_rejects_invalid(ts):
    with pytest.raises(DecompositionError):
        decompose(GridTiling.from_rows(rows("0r0 0r0"), ts))


def test_every_4x4_zone_has_class8_interior(ts, table):
    n = [0]

    def visit(grid):
        g = GridTiling(4, 4, tuple(table.tiles[i] for row in grid for i in row), ts)
        d = decompose(g)
        for band in d.zones:
            for z in band:
                for axis in "xy":
                    assert all(k == 8 for k in line_classes(z, axis))
        n[0] += 1

    count_tilings(table, 4, 4, visit=visit)
    assert n[0] == 481


def test_whole_zones_are_discovered(ts, table):
    forms = {s.form for s in discover_supertiles(ts, 3, 3, 1, table)}
    res = enumerate_tilings(SearchConfig(7, 7, max_results=200), ts, table)
    seen = 0
    for g in res.tilings:
        d = decompose(g)
        xs = (0,) + d.xcuts + (g.width,)
        ys = (0,) + d.ycuts + (g.height,)
        for i in range(1, len(ys) - 2):
            for j in range(1, len(xs) - 2):
                assert canonical_form(d.zones[i][j], table) in forms
                seen += 1
    assert seen > 0


def test_supertile_sizes(ts, table):
    sts = discover_supertiles(ts, 3, 3, 1, table)
    assert [(s.width, s.height) for s in sts] == [(2, 2), (3, 2), (3, 3)]
    for s in sts:
        assert validate(s.content) == []
        assert all(e.thickness == 3 for side in perimeter(s.content) for e in side)


def test_supertiles_embed_in_a_padded_tiling(ts, table):
    for s in discover_supertiles(ts, 3, 3, 1, table):
        z = tuple(table.lookup(c) for c in s.content.cells)
        assert surroundable(table, z, s.width, s.height, 1)


def test_discovery_validates_arguments(ts):
    with pytest.raises(ValueError):
        discover_supertiles(ts, 0, 3, 1)


def test_unsatisfiable_tileset_has_no_supertiles():
    p = TilePrototype(0, "x", tuple(EdgeDecoration(0, 1) for _ in range(4)), (0, 0, 0, 0))
    assert discover_supertiles(Tileset("dead", (p,)), 2, 2, 1) == []


def test_canonical_form_is_rotation_invariant(ts, table):
    s = discover_supertiles(ts, 3, 3, 1, table)[1]
    for k in range(4):
        assert canonical_form(s.content.rotated(k), table) == s.form
    assert from_form(s.form, ts) == s.content


def test_zone_contents_interior_is_class8(table):
    for z in zone_contents(table, 2, 2)[:50]:
        a, b, c, d = z
        assert table.hsum[a][b] == 8 and table.vsum[a][c] == 8


def test_corner_check_shipped(ts):
    rep = corner_redundancy_check(ts, "crossing", 6)
    assert rep.count == 0 and rep.examined == 1
    # the one crossing arrangement: four corner tiles, vertex sum 4
    assert corner_redundancy_check(ts, "crossing", 4).count == 1
    assert corner_redundancy_check(ts, "crossing", 9).count == 0


def test_corner_check_boundary_reading_differs(ts):
    rep = corner_redundancy_check(ts, "boundary", 6)
    assert rep.examined == 49 and rep.count == 32


def test_corner_check_constructed_uniform_tileset():
    p = TilePrototype(0, "u", tuple(EdgeDecoration(0, 3) for _ in range(4)), (1, 1, 1, 1))
    rep = corner_redundancy_check(Tileset("u", (p,)), "crossing", 6)
    assert rep.count == 0 and rep.examined == 1


def test_corner_check_reading_validated(ts):
    with pytest.raises(ValueError):
        corner_redundancy_check(ts, "sideways")
