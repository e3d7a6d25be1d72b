"""Local matching rules, whole-patch validation and the tiling file format."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .model import (E, N, NE, NW, S, SE, SW, W, EdgeDecoration, OrientedTile, RuleSet,
                    Tileset, TilesetError, corner_of, edge_of, strip_comment)

FREE = "free"
TORUS = "torus"
MIXED = "MIXED"
UNKNOWN = "UNKNOWN"
# axis "x": vertical lines between columns (index 1..width-1)
# axis "y": horizontal lines between rows (index 1..height-1)
AXES = ("x", "y")


def edges_compatible(a: EdgeDecoration, b: EdgeDecoration, r: RuleSet) -> bool:
    return a.color == b.color and (a.thickness + b.thickness) in r.thickness_sums


def vertex_compatible(c1: int, c2: int, c3: int, c4: int, r: RuleSet) -> bool:
    return (c1 + c2 + c3 + c4) in r.corner_sums


@dataclass(frozen=True)
class GridTiling:
    width: int
    height: int
    cells: tuple[Optional[OrientedTile], ...]
    tileset: Tileset

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        if len(self.cells) != self.width * self.height:
            raise ValueError("cell array length does not match width*height")
        n = len(self.tileset.prototypes)
        for c in self.cells:
            if c is not None and not (0 <= c.proto < n and 0 <= c.rot < 4):
                raise ValueError(f"cell {c} does not belong to tileset {self.tileset.name!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Optional[OrientedTile]]], ts: Tileset) -> "GridTiling":
        h = len(rows)
        w = len(rows[0]) if h else 0
        if any(len(r) != w for r in rows):
            raise ValueError("ragged rows")
        return cls(w, h, tuple(OrientedTile(*c) if c is not None else None
                               for row in rows for c in row), ts)

    def at(self, r: int, c: int) -> Optional[OrientedTile]:
        return self.cells[r * self.width + c]

    def rows(self) -> list[list[Optional[OrientedTile]]]:
        w = self.width
        return [list(self.cells[i:i + w]) for i in range(0, len(self.cells), w)]

    @cached_property
    def complete(self) -> bool:
        return all(c is not None for c in self.cells)

    def crop(self, r0: int, c0: int, h: int, w: int) -> "GridTiling":
        if r0 < 0 or c0 < 0 or r0 + h > self.height or c0 + w > self.width:
            raise ValueError("crop window outside the grid")
        return GridTiling.from_rows([self.rows()[r][c0:c0 + w] for r in range(r0, r0 + h)], self.tileset)

    def rotated(self, k: int = 1) -> "GridTiling":
        """Rotate the whole patch (and every tile) by k quarter-turns counter-clockwise."""
        t = self
        for _ in range(k % 4):
            old = t.rows()
            w, h = t.width, t.height
            new = [[None if old[c][w - 1 - r] is None else
                    OrientedTile(old[c][w - 1 - r].proto, (old[c][w - 1 - r].rot + 1) % 4)
                    for c in range(h)] for r in range(w)]
            t = GridTiling.from_rows(new, t.tileset)
        return t

    def key(self) -> tuple:
        """Sort key: row-major (protoId, rot) sequence."""
        return tuple((-1, -1) if c is None else (c.proto, c.rot) for c in self.cells)


@dataclass(frozen=True)
class Violation:
    kind: str  # edge-color, edge-thickness or vertex-sum
    location: tuple
    observed: tuple


def _pair_violations(a, b, da, db, loc, ts, out):
    ea, eb = edge_of(a, da, ts), edge_of(b, db, ts)
    if ea.color != eb.color:
        out.append(Violation("edge-color", loc, (ea.color, eb.color)))
    if ea.thickness + eb.thickness not in ts.rules.thickness_sums:
        out.append(Violation("edge-thickness", loc, (ea.thickness, eb.thickness)))


def validate(t: GridTiling, boundary: str = FREE) -> list[Violation]:
    """Every rule violation, row-major, edges before vertices.

    Edge locations are ((r1, c1), (r2, c2)) cell pairs; vertex locations are
    ("vertex", r, c) naming the grid point at the top-left corner of cell (r, c).
    """
    if boundary not in (FREE, TORUS):
        raise ValueError(f"unknown boundary policy {boundary!r}")
    ts = t.tileset
    w, h = t.width, t.height
    torus = boundary == TORUS
    edges: list[Violation] = []
    verts: list[Violation] = []
    for r in range(h):
        for c in range(w):
            a = t.at(r, c)
            if a is None:
                continue
            if c + 1 < w or torus:
                c2 = (c + 1) % w
                b = t.at(r, c2)
                if b is not None:
                    _pair_violations(a, b, E, W, ((r, c), (r, c2)), ts, edges)
            if r + 1 < h or torus:
                r2 = (r + 1) % h
                b = t.at(r2, c)
                if b is not None:
                    _pair_violations(a, b, S, N, ((r, c), (r2, c)), ts, edges)
    rr = range(h) if torus else range(1, h)
    cr = range(w) if torus else range(1, w)
    for r in rr:
        for c in cr:
            nw = t.at((r - 1) % h, (c - 1) % w)
            ne = t.at((r - 1) % h, c)
            sw = t.at(r, (c - 1) % w)
            se = t.at(r, c)
            if None in (nw, ne, sw, se):
                continue
            vals = (corner_of(sw, NE, ts), corner_of(se, NW, ts), corner_of(nw, SE, ts), corner_of(ne, SW, ts))
            if not vertex_compatible(*vals, ts.rules):
                verts.append(Violation("vertex-sum", ("vertex", r, c), vals))
    return edges + verts


def line_class(t: GridTiling, axis: str, index: int):
    """Common thickness sum across one interior grid line, MIXED or UNKNOWN."""
    ts = t.tileset
    if axis == "x":
        if not 1 <= index <= t.width - 1:
            raise IndexError(f"no vertical interior line {index} in width {t.width}")
        pairs = [(t.at(r, index - 1), t.at(r, index), E, W) for r in range(t.height)]
    elif axis == "y":
        if not 1 <= index <= t.height - 1:
            raise IndexError(f"no horizontal interior line {index} in height {t.height}")
        pairs = [(t.at(index - 1, c), t.at(index, c), S, N) for c in range(t.width)]
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    seen = set()
    for a, b, da, db in pairs:
        if a is None or b is None:
            continue
        seen.add(edge_of(a, da, ts).thickness + edge_of(b, db, ts).thickness)
    if not seen:
        return UNKNOWN
    if len(seen) > 1:
        return MIXED
    return seen.pop()


def line_classes(t: GridTiling, axis: str) -> list:
    n = t.width if axis == "x" else t.height
    return [line_class(t, axis, i) for i in range(1, n)]


# ---------------------------------------------------------------- compiled tables

class TileTable:
    """Integer-indexed view of a tileset's distinct oriented tiles.

    hsum[a][b] is the thickness sum when tile a sits left of tile b, or 0 when
    the pair breaks a rule; vsum[a][b] likewise for a above b.
    """

    def __init__(self, ts: Tileset):
        self.tileset = ts
        self.tiles = ts.orientations()
        self.index = {t: i for i, t in enumerate(self.tiles)}
        self._alias: dict = {}
        n = len(self.tiles)
        self.edges = [[edge_of(t, d, ts) for d in range(4)] for t in self.tiles]
        self.corners = [[corner_of(t, k, ts) for k in range(4)] for t in self.tiles]
        r = ts.rules
        self.hsum = [[0] * n for _ in range(n)]
        self.vsum = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if edges_compatible(self.edges[a][E], self.edges[b][W], r):
                    self.hsum[a][b] = self.edges[a][E].thickness + self.edges[b][W].thickness
                if edges_compatible(self.edges[a][S], self.edges[b][N], r):
                    self.vsum[a][b] = self.edges[a][S].thickness + self.edges[b][N].thickness
        self.corner_sums = r.corner_sums
        self.rot_next = []
        from .model import canonical_orientation
        for t in self.tiles:
            self.rot_next.append(self.index[canonical_orientation(OrientedTile(t.proto, t.rot + 1), ts)])

    def __len__(self):
        return len(self.tiles)

    @staticmethod
    def member(t: OrientedTile, allowed) -> bool:
        return t.proto in allowed

    def lookup(self, t: OrientedTile) -> int:
        hit = self.index.get(t)
        if hit is None:
            hit = self._alias.get(t)
        if hit is None:
            from .model import canonical_orientation
            hit = self._alias[t] = self.index[canonical_orientation(t, self.tileset)]
        return hit

    def vertex_ok(self, nw: int, ne: int, sw: int, se: int) -> bool:
        c = self.corners
        return (c[nw][SE] + c[ne][SW] + c[sw][NE] + c[se][NW]) in self.corner_sums


# ---------------------------------------------------------------- tiling files

def format_tiling(t: GridTiling, name: str = "t") -> str:
    lines = [f"tiling {name} {t.width} {t.height} tileset={t.tileset.name}"]
    for row in t.rows():
        lines.append(" ".join("." if c is None else c.token for c in row))
    return "\n".join(lines) + "\n"


def parse_tilings(text: str, ts: Tileset) -> list[tuple[str, GridTiling]]:
    """Parse one or more concatenated tiling blocks."""
    out = []
    lines = [(i, strip_comment(raw)) for i, raw in enumerate(text.splitlines(), 1)]
    lines = [(i, l) for i, l in lines if l]
    k = 0
    while k < len(lines):
        lineno, head = lines[k]
        parts = head.split()
        if parts[0] != "tiling" or len(parts) != 5 or not parts[4].startswith("tileset="):
            raise TilesetError("expected 'tiling <name> <width> <height> tileset=<name>'", lineno)
        name = parts[1]
        try:
            w, h = int(parts[2]), int(parts[3])
        except ValueError:
            raise TilesetError("tiling width and height must be integers", lineno) from None
        if parts[4][len("tileset="):] != ts.name:
            raise TilesetError(f"tiling refers to tileset {parts[4][8:]!r}, not {ts.name!r}", lineno)
        rows = []
        for j in range(h):
            if k + 1 + j >= len(lines):
                raise TilesetError("tiling ended early", lineno)
            rl, row = lines[k + 1 + j]
            toks = row.split()
            if len(toks) != w:
                raise TilesetError(f"expected {w} tokens, got {len(toks)}", rl)
            try:
                rows.append([None if tok == "." else OrientedTile.from_token(tok) for tok in toks])
            except TilesetError as exc:
                raise TilesetError(str(exc), rl) from None
        try:
            out.append((name, GridTiling.from_rows(rows, ts)))
        except ValueError as exc:
            raise TilesetError(str(exc), lineno) from None
        k += 1 + h
    return out


def parse_tiling(text: str, ts: Tileset) -> GridTiling:
    found = parse_tilings(text, ts)
    if len(found) != 1:
        raise TilesetError(f"expected one tiling, found {len(found)}")
    return found[0][1]
