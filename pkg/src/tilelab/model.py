"""Tiles, decorations, rotations and the tileset text format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

N, E, S, W = 0, 1, 2, 3
NE, SE, SW, NW = 0, 1, 2, 3
DIRS = ("N", "E", "S", "W")
CORNERS = ("NE", "SE", "SW", "NW")
MAX_VALUE = 15


class TilesetError(ValueError):
    """Raised for malformed tileset files or out-of-range decorations."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class EdgeDecoration:
    color: int
    thickness: int

    def __post_init__(self):
        if self.color not in (0, 1):
            raise TilesetError(f"edge color must be 0 or 1, got {self.color}")
        if not 0 <= self.thickness <= MAX_VALUE:
            raise TilesetError(f"edge thickness out of range 0..{MAX_VALUE}: {self.thickness}")


@dataclass(frozen=True)
class TilePrototype:
    id: int
    name: str
    edges: tuple[EdgeDecoration, EdgeDecoration, EdgeDecoration, EdgeDecoration]
    corners: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.edges) != 4 or len(self.corners) != 4:
            raise TilesetError(f"tile {self.name!r} needs exactly 4 edges and 4 corners")
        for c in self.corners:
            if not 0 <= c <= MAX_VALUE:
                raise TilesetError(f"corner value out of range 0..{MAX_VALUE}: {c}")


@dataclass(frozen=True)
class RuleSet:
    thickness_sums: frozenset[int] = frozenset({6, 8})
    corner_sums: frozenset[int] = frozenset({4, 6, 9})


class OrientedTile(NamedTuple):
    """A prototype id plus a counter-clockwise quarter-turn count."""

    proto: int
    rot: int

    @property
    def token(self) -> str:
        return f"{self.proto}r{self.rot}"

    @classmethod
    def from_token(cls, tok: str) -> "OrientedTile":
        m = re.fullmatch(r"(\d+)r([0-3])", tok)
        if not m:
            raise TilesetError(f"bad tile token {tok!r}")
        return cls(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class Tileset:
    name: str
    prototypes: tuple[TilePrototype, ...]
    rules: RuleSet = field(default_factory=RuleSet)
    reflections_allowed: bool = False

    def __post_init__(self):
        for i, p in enumerate(self.prototypes):
            if p.id != i:
                raise TilesetError(f"prototype ids must be contiguous from 0 (tile {p.name!r} has id {p.id})")
        names = [p.name for p in self.prototypes]
        if len(set(names)) != len(names):
            raise TilesetError("duplicate tile name")

    def proto(self, pid: int) -> TilePrototype:
        if not 0 <= pid < len(self.prototypes):
            raise KeyError(f"unknown prototype id {pid}")
        return self.prototypes[pid]

    def orientations(self) -> list[OrientedTile]:
        """All pairwise-distinct oriented tiles, in (protoId, rot) order."""
        return [OrientedTile(p.id, r) for p in self.prototypes for r in distinct_orientations(p)]


def rotate(t: OrientedTile, k: int = 1) -> OrientedTile:
    return OrientedTile(t.proto, (t.rot + k) % 4)


def edge_of(t: OrientedTile, d: int, ts: Tileset) -> EdgeDecoration:
    # after rot CCW quarter-turns, direction d shows the prototype edge rot steps clockwise of it
    return ts.proto(t.proto).edges[(d + t.rot) % 4]


def corner_of(t: OrientedTile, c: int, ts: Tileset) -> int:
    return ts.proto(t.proto).corners[(c + t.rot) % 4]


def rotated_assignment(p: TilePrototype, rot: int):
    edges = tuple(p.edges[(d + rot) % 4] for d in range(4))
    corners = tuple(p.corners[(c + rot) % 4] for c in range(4))
    return edges, corners


def distinct_orientations(p: TilePrototype) -> list[int]:
    seen = set()
    out = []
    for r in range(4):
        a = rotated_assignment(p, r)
        if a not in seen:
            seen.add(a)
            out.append(r)
    return out


def canonical_orientation(t: OrientedTile, ts: Tileset) -> OrientedTile:
    """Smallest rotation of the same prototype showing identical decorations."""
    p = ts.proto(t.proto)
    target = rotated_assignment(p, t.rot)
    for r in range(4):
        if rotated_assignment(p, r) == target:
            return OrientedTile(t.proto, r)
    raise AssertionError("unreachable")


# ---------------------------------------------------------------- file format

def _ints(text: str, line: int) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise TilesetError(f"expected comma-separated integers, got {text!r}", line) from None
    for v in vals:
        if not 0 <= v <= MAX_VALUE:
            raise TilesetError(f"value {v} outside 0..{MAX_VALUE}", line)
    return vals


def _keyvals(parts: Iterable[str], line: int) -> dict[str, str]:
    out = {}
    for part in parts:
        if "=" not in part:
            raise TilesetError(f"expected key=value, got {part!r}", line)
        k, v = part.split("=", 1)
        out[k] = v
    return out


def strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _directives(parts: list[str]):
    # several edge/corner directives may share one line
    if parts[0] not in ("edge", "corner"):
        yield parts
        return
    cur: list[str] = []
    for p in parts:
        if p in ("edge", "corner") and cur:
            yield cur
            cur = []
        cur.append(p)
    yield cur


def _apply(parts, lineno, name, rules, reflections, tiles):
    head = parts[0]
    if head == "tileset":
        if len(parts) != 2 or name is not None:
            raise TilesetError("expected a single 'tileset <name>' header", lineno)
        name = parts[1]
    elif head == "rules":
        kv = _keyvals(parts[1:], lineno)
        unknown = set(kv) - {"thickness_sums", "corner_sums", "reflections"}
        if unknown:
            raise TilesetError(f"unknown rule keys {sorted(unknown)}", lineno)
        ts_ = kv.get("thickness_sums")
        cs_ = kv.get("corner_sums")
        rules = RuleSet(
            frozenset(_ints(ts_, lineno)) if ts_ is not None else rules.thickness_sums,
            frozenset(_ints(cs_, lineno)) if cs_ is not None else rules.corner_sums,
        )
        if "reflections" in kv:
            if kv["reflections"] not in ("true", "false"):
                raise TilesetError("reflections must be true or false", lineno)
            reflections = kv["reflections"] == "true"
    elif head == "tile":
        if len(parts) != 2:
            raise TilesetError("expected 'tile <name>'", lineno)
        if any(t[0] == parts[1] for t in tiles):
            raise TilesetError(f"duplicate tile name {parts[1]!r}", lineno)
        tiles.append((parts[1], {}, {}, lineno))
    elif head == "edge":
        if not tiles:
            raise TilesetError("edge line outside a tile block", lineno)
        if len(parts) < 2 or parts[1] not in DIRS:
            raise TilesetError("expected 'edge <N|E|S|W> color=<c> thickness=<t>'", lineno)
        kv = _keyvals(parts[2:], lineno)
        if set(kv) != {"color", "thickness"}:
            raise TilesetError("edge needs exactly color= and thickness=", lineno)
        edges = tiles[-1][1]
        d = DIRS.index(parts[1])
        if d in edges:
            raise TilesetError(f"edge {parts[1]} given twice (a fifth edge line?)", lineno)
        try:
            edges[d] = EdgeDecoration(int(kv["color"]), int(kv["thickness"]))
        except ValueError as exc:
            raise TilesetError(str(exc), lineno) from None
    elif head == "corner":
        if not tiles:
            raise TilesetError("corner line outside a tile block", lineno)
        if len(parts) != 3 or parts[1] not in CORNERS:
            raise TilesetError("expected 'corner <NE|SE|SW|NW> <int>'", lineno)
        corners = tiles[-1][2]
        c = CORNERS.index(parts[1])
        if c in corners:
            raise TilesetError(f"corner {parts[1]} given twice", lineno)
        corners[c] = _ints(parts[2], lineno)[0]
    else:
        raise TilesetError(f"unknown directive {head!r}", lineno)
    return name, rules, reflections


def parse_tileset(text: str) -> Tileset:
    name = None
    rules = RuleSet()
    reflections = False
    tiles: list[tuple[str, dict, dict, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        for parts in _directives(line.split()):
            name, rules, reflections = _apply(parts, lineno, name, rules, reflections, tiles)
    if name is None:
        raise TilesetError("missing 'tileset <name>' header")
    protos = []
    for i, (tname, edges, corners, lineno) in enumerate(tiles):
        if len(edges) != 4:
            raise TilesetError(f"tile {tname!r} is missing edges", lineno)
        if len(corners) != 4:
            raise TilesetError(f"tile {tname!r} is missing corners", lineno)
        protos.append(TilePrototype(i, tname, tuple(edges[d] for d in range(4)),
                                    tuple(corners[c] for c in range(4))))
    return Tileset(name, tuple(protos), rules, reflections)


def serialize_tileset(ts: Tileset) -> str:
    r = ts.rules
    lines = [
        f"tileset {ts.name}",
        "rules thickness_sums={} corner_sums={} reflections={}".format(
            ",".join(map(str, sorted(r.thickness_sums))),
            ",".join(map(str, sorted(r.corner_sums))),
            "true" if ts.reflections_allowed else "false"),
    ]
    for p in ts.prototypes:
        lines.append(f"tile {p.name}")
        for d, e in zip(DIRS, p.edges):
            lines.append(f"  edge {d} color={e.color} thickness={e.thickness}")
        lines.append("  " + "   ".join(f"corner {c} {v}" for c, v in zip(CORNERS, p.corners)))
    return "\n".join(lines) + "\n"


def load_tileset(path) -> Tileset:
    with open(path, encoding="utf-8") as fh:
        return parse_tileset(fh.read())
