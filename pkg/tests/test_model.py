import pytest
from hypothesis import given, strategies as st

from tilelab.model import (CORNERS, DIRS, E, N, NE, NW, S, SE, SW, W, EdgeDecoration, OrientedTile, RuleSet,
                           TilePrototype, Tileset, TilesetError, canonical_orientation, corner_of,
                           distinct_orientations, edge_of, parse_tileset, rotate, serialize_tileset)


def proto(edges, corners=(0, 0, 0, 0), pid=0, name="p"):
    return TilePrototype(pid, name, tuple(EdgeDecoration(c, t) for c, t in edges), tuple(corners))


ASYM = proto([(0, 1), (0, 2), (1, 3), (1, 4)], (5, 6, 7, 8))
ONE = Tileset("one", (ASYM,))


def test_identity_rotation():
    t = OrientedTile(0, 0)
    for d in range(4):
        assert edge_of(t, d, ONE) == ASYM.edges[d]


def test_quarter_turn_brings_east_edge_north():
    assert edge_of(OrientedTile(0, 1), N, ONE) == ASYM.edges[E]
    assert edge_of(OrientedTile(0, 1), E, ONE) == ASYM.edges[S]
    assert edge_of(OrientedTile(0, 1), S, ONE) == ASYM.edges[W]
    assert edge_of(OrientedTile(0, 1), W, ONE) == ASYM.edges[N]


def test_half_turn_is_an_involution():
    t = OrientedTile(0, 0)
    assert edge_of(OrientedTile(0, 2), N, ONE) == ASYM.edges[S]
    assert rotate(rotate(t, 2), 2) == t


def test_corner_rotation():
    assert corner_of(OrientedTile(0, 0), NE, ONE) == 5
    assert corner_of(OrientedTile(0, 1), NW, ONE) == ASYM.corners[NE]


def test_symmetric_orientations():
    full = proto([(0, 4)] * 4, (1, 1, 1, 1))
    half = proto([(0, 3), (0, 4), (0, 3), (0, 4)], (2, 2, 2, 2))
    assert distinct_orientations(full) == [0]
    assert distinct_orientations(half) == [0, 1]
    assert distinct_orientations(ASYM) == [0, 1, 2, 3]


def test_shipped_orientations(ts):
    # corner and side tiles are asymmetric; the center tile is uniform
    from tilelab.model import distinct_orientations as d
    assert [d(p) for p in ts.prototypes] == [[0, 1, 2, 3], [0, 1, 2, 3], [0]]
    assert len(ts.orientations()) == 9


def test_shipped_tileset_rules(ts):
    assert len(ts.prototypes) == 3
    assert ts.rules.thickness_sums == {6, 8}
    assert ts.rules.corner_sums == {4, 6, 9}
    assert not ts.reflections_allowed


def test_canonical_orientation_of_uniform_tile(ts):
    assert canonical_orientation(OrientedTile(2, 3), ts) == OrientedTile(2, 0)


def test_empty_tileset_parses():
    ts = parse_tileset("tileset none\nrules thickness_sums=6,8 corner_sums=4,6,9 reflections=false\n")
    assert ts.prototypes == ()


def test_fifth_edge_rejected_with_line():
    text = """tileset x
tile a
  edge N color=0 thickness=3
  edge E color=0 thickness=3
  edge S color=0 thickness=3
  edge W color=0 thickness=3
  edge N color=1 thickness=3
"""
    with pytest.raises(TilesetError) as err:
        parse_tileset(text)
    assert err.value.line == 7


@pytest.mark.parametrize("bad", [
    "tileset x\ntile a\ntile a\n",
    "tileset x\nrules thickness_sums=6,16\n",
    "tileset x\ntile a\n  edge N color=0 thickness=3\n",
    "tile a\n",
    "tileset x\nbogus\n",
])
def test_malformed_files(bad):
    with pytest.raises(TilesetError):
        parse_tileset(bad)


def test_round_trip(ts):
    text = serialize_tileset(ts)
    assert parse_tileset(text) == ts
    assert serialize_tileset(parse_tileset(text)) == text


def test_token_round_trip():
    assert OrientedTile.from_token("2r3") == OrientedTile(2, 3)
    assert OrientedTile(1, 2).token == "1r2"


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_rotation_action(rot, k, d):
    t = OrientedTile(0, rot)
    # turning the tile k times counter-clockwise: what faced d-k now faces d
    assert edge_of(rotate(t, k), d, ONE) == edge_of(t, (d + k) % 4, ONE)


@given(st.integers(0, 3), st.integers(0, 3))
def test_edges_and_corners_shift_together(rot, d):
    t = OrientedTile(0, rot)
    assert edge_of(t, d, ONE) == ASYM.edges[(d + rot) % 4]
    assert corner_of(t, d, ONE) == ASYM.corners[(d + rot) % 4]


def test_decoration_bounds():
    with pytest.raises(ValueError):
        EdgeDecoration(0, 16)
    with pytest.raises(ValueError):
        EdgeDecoration(2, 3)


def test_direction_names():
    assert DIRS == ("N", "E", "S", "W") and CORNERS == ("NE", "SE", "SW", "NW")
    assert (NE, SE, SW, NW) == (0, 1, 2, 3) and (N, E, S, W) == (0, 1, 2, 3)


def test_ruleset_defaults():
    assert RuleSet().corner_sums == {4, 6, 9}
