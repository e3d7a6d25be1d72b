import itertools

import pytest
from hypothesis import given, strategies as st

from tilelab.engine import (FREE, MIXED, TORUS, UNKNOWN, GridTiling, edges_compatible, format_tiling,
                            line_class, line_classes, parse_tiling, parse_tilings, validate, vertex_compatible)
from tilelab.model import EdgeDecoration, OrientedTile, RuleSet, TilePrototype, Tileset, TilesetError

R = RuleSet()


def test_edge_examples():
    assert edges_compatible(EdgeDecoration(0, 3), EdgeDecoration(0, 3), R)
    assert not edges_compatible(EdgeDecoration(0, 4), EdgeDecoration(1, 4), R)
    assert not edges_compatible(EdgeDecoration(1, 3), EdgeDecoration(1, 4), R)


def test_vertex_examples():
    assert vertex_compatible(1, 1, 1, 1, R)
    assert vertex_compatible(0, 0, 0, 9, R)
    assert not vertex_compatible(1, 1, 1, 2, R)


def grid(rows, ts):
    return GridTiling.from_rows([[OrientedTile.from_token(t) for t in row.split()] for row in rows], ts)


def test_zone_block_is_valid(ts):
    # four corner tiles turned to enclose a 2x2 zone
    g = grid(["0r1 0r0", "0r2 0r3"], ts)
    assert validate(g) == []
    assert line_classes(g, "x") == [8] and line_classes(g, "y") == [8]


def test_two_blocks_meet_on_a_class6_line(ts):
    g = grid(["0r1 0r0 0r1 0r0", "0r2 0r3 0r2 0r3"], ts)
    assert validate(g) == []
    assert line_classes(g, "x") == [8, 6, 8]


def test_violation_locations(ts):
    g = grid(["0r0 0r0"], ts)
    vs = validate(g)
    kinds = {v.kind for v in vs}
    assert "edge-thickness" in kinds or "edge-color" in kinds
    for v in vs:
        (r1, c1), (r2, c2) = v.location
        assert 0 <= r1 < 1 and 0 <= c2 < 2


def test_vertex_violation_reported(ts):
    # center tiles agree on edges (4+4) but four 4-corners sum to 16
    g = grid(["2r0 2r0", "2r0 2r0"], ts)
    vs = validate(g)
    assert [v.kind for v in vs] == ["vertex-sum"]
    assert vs[0].location == ("vertex", 1, 1) and sum(vs[0].observed) == 16


def test_torus_adds_wrap_edges(ts):
    g = grid(["0r1 0r0", "0r2 0r3"], ts)
    assert validate(g, TORUS) == []
    with pytest.raises(ValueError):
        validate(g, "mobius")


def test_line_class_mixed_and_unknown(ts):
    g = GridTiling(2, 2, (OrientedTile(0, 0), OrientedTile(0, 1), OrientedTile(2, 0), OrientedTile(2, 0)), ts)
    assert line_class(g, "x", 1) == MIXED
    holes = GridTiling(2, 1, (None, OrientedTile(0, 0)), ts)
    assert line_class(holes, "x", 1) == UNKNOWN
    with pytest.raises(IndexError):
        line_class(g, "x", 2)


def test_grid_size_checked(ts):
    with pytest.raises(ValueError):
        GridTiling(2, 2, (OrientedTile(0, 0),), ts)


def test_rotated_grid(ts):
    g = grid(["0r1 0r0 0r1 0r0", "0r2 0r3 0r2 0r3"], ts)
    r = g.rotated(1)
    assert (r.width, r.height) == (2, 4)
    assert validate(r) == []
    assert g.rotated(4) == g


def test_format_round_trip(ts):
    g = grid(["0r1 0r0", "0r2 0r3"], ts)
    text = format_tiling(g, "blk")
    assert parse_tiling(text, ts) == g
    assert len(parse_tilings(text + text, ts)) == 2


def test_parse_errors(ts):
    with pytest.raises(TilesetError):
        parse_tiling("tiling a 2 1 tileset=other\n0r0 0r0\n", ts)
    with pytest.raises(TilesetError):
        parse_tiling("tiling a 2 2 tileset=as\n0r0 0r0\n", ts)
    with pytest.raises(TilesetError):
        parse_tiling("tiling a 2 1 tileset=as\n0r0\n", ts)


def literal_edge(c1, t1, c2, t2):
    return c1 == c2 and t1 + t2 in (6, 8)


def literal_vertex(a, b, c, d):
    return a + b + c + d in (4, 6, 9)


@given(st.integers(0, 1), st.integers(0, 15), st.integers(0, 1), st.integers(0, 15))
def test_edge_predicate_symmetric(c1, t1, c2, t2):
    a, b = EdgeDecoration(c1, t1), EdgeDecoration(c2, t2)
    assert edges_compatible(a, b, R) == edges_compatible(b, a, R) == literal_edge(c1, t1, c2, t2)


@given(st.permutations([0, 1, 3, 5]))
def test_vertex_predicate_order_free(p):
    assert vertex_compatible(*p, R) == literal_vertex(*p)


def test_row_major_ordering(ts):
    g = grid(["0r0 0r0", "0r0 0r0"], ts)
    vs = validate(g)
    edge_part = [v for v in vs if v.kind != "vertex-sum"]
    assert vs[:len(edge_part)] == edge_part
