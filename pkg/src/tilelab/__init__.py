"""Verification and exploration engine for a three-square decorated tileset."""

from importlib import resources
from pathlib import Path

from .engine import FREE, MIXED, TORUS, UNKNOWN, GridTiling, TileTable, edges_compatible, validate, vertex_compatible
from .model import EdgeDecoration, OrientedTile, RuleSet, TilePrototype, Tileset, load_tileset, parse_tileset
from .search import SearchConfig, enumerate_tilings, max_completable_square, naive_enumerate
from .substitution import (CoarseTileset, derive_coarse_tileset, expand, generate_plane_patch, line_sequence,
                           load_rules, oeis_match, smallest_period, substitute_1d)
from .zones import corner_redundancy_check, decompose, discover_supertiles

__version__ = "0.1.0"

ASSETS = ("as.tiles", "coarse.tiles", "as.rules", "a159684.bits")


def data_path(name: str) -> Path:
    """A path as given if it exists, else the shipped asset of that file name."""
    p = Path(name)
    if p.exists():
        return p
    shipped = Path(str(resources.files("tilelab") / "data" / p.name))
    if shipped.exists():
        return shipped
    raise FileNotFoundError(name)


def shipped_tileset() -> Tileset:
    return load_tileset(data_path("as.tiles"))


def shipped_coarse() -> CoarseTileset:
    from .substitution import parse_coarse
    return parse_coarse(data_path("coarse.tiles").read_text(), shipped_tileset())


def shipped_rules(cts=None) -> dict:
    cts = cts or shipped_coarse()
    return load_rules(data_path("as.rules").read_text(), cts)
