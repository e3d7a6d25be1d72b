"""Zones between class-6 lines, supertile discovery and the corner check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .engine import FREE, MIXED, UNKNOWN, GridTiling, TileTable, line_classes, validate
from .model import E, N, NE, NW, S, SE, SW, W, EdgeDecoration, OrientedTile, Tileset

BOUNDARY = 6
INTERIOR = 8


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class ZoneDecomposition:
    xcuts: tuple[int, ...]  # vertical class-6 lines, as column indices
    ycuts: tuple[int, ...]  # horizontal class-6 lines, as row indices
    zones: tuple[tuple[GridTiling, ...], ...]  # zones[band_row][band_col]

    @property
    def column_widths(self) -> list[int]:
        return [z.width for z in self.zones[0]]

    @property
    def row_heights(self) -> list[int]:
        return [row[0].height for row in self.zones]


def decompose(t: GridTiling, boundary_class: int = BOUNDARY) -> ZoneDecomposition:
    if not t.complete:
        raise DecompositionError("decompose needs a complete tiling")
    if validate(t, FREE):
        raise DecompositionError("decompose needs a valid tiling")
    xc = line_classes(t, "x")
    yc = line_classes(t, "y")
    if MIXED in xc or MIXED in yc:
        raise DecompositionError("internal inconsistency: a valid tiling has a MIXED line")
    xcuts = tuple(i + 1 for i, k in enumerate(xc) if k == boundary_class)
    ycuts = tuple(i + 1 for i, k in enumerate(yc) if k == boundary_class)
    xs = (0,) + xcuts + (t.width,)
    ys = (0,) + ycuts + (t.height,)
    zones = tuple(
        tuple(t.crop(ys[i], xs[j], ys[i + 1] - ys[i], xs[j + 1] - xs[j]) for j in range(len(xs) - 1))
        for i in range(len(ys) - 1))
    return ZoneDecomposition(xcuts, ycuts, zones)


# ---------------------------------------------------------------- canonical forms

def canonical_cells(g: GridTiling, table: Optional[TileTable] = None) -> tuple:
    """Cells with each tile replaced by its canonical orientation token."""
    table = table or TileTable(g.tileset)
    return tuple(table.tiles[table.lookup(c)] for c in g.cells)


def canonical_form(g: GridTiling, table: Optional[TileTable] = None) -> tuple:
    """Lexicographically least (height, width, cells) over the four rotations."""
    table = table or TileTable(g.tileset)
    best = None
    cur = g
    for _ in range(4):
        form = (cur.height, cur.width, tuple((c.proto, c.rot) for c in canonical_cells(cur, table)))
        if best is None or form < best:
            best = form
        cur = cur.rotated(1)
    return best


def from_form(form: tuple, ts: Tileset) -> GridTiling:
    h, w, cells = form
    return GridTiling(w, h, tuple(OrientedTile(*c) for c in cells), ts)


def perimeter(g: GridTiling) -> tuple[tuple[EdgeDecoration, ...], ...]:
    """Edge decorations around the patch, clockwise: N left-to-right, E top-to-bottom,
    S right-to-left, W bottom-to-top."""
    from .model import edge_of
    ts = g.tileset
    rows = g.rows()
    north = tuple(edge_of(rows[0][c], N, ts) for c in range(g.width))
    east = tuple(edge_of(rows[r][g.width - 1], E, ts) for r in range(g.height))
    south = tuple(edge_of(rows[g.height - 1][c], S, ts) for c in reversed(range(g.width)))
    west = tuple(edge_of(rows[r][0], W, ts) for r in reversed(range(g.height)))
    return north, east, south, west


@dataclass(frozen=True)
class Supertile:
    content: GridTiling
    form: tuple = field(compare=True)

    @property
    def width(self) -> int:
        return self.content.width

    @property
    def height(self) -> int:
        return self.content.height

    @property
    def boundary_signature(self) -> tuple:
        return tuple(tuple((e.color, e.thickness) for e in side) for side in perimeter(self.content))


# ---------------------------------------------------------------- constrained filling

class _Filler:
    """Backtracking fill with per-edge class constraints and pre-placed cells."""

    def __init__(self, table: TileTable, w: int, h: int):
        self.t = table
        self.w, self.h = w, h
        self.grid = [[-1] * w for _ in range(h)]
        # vreq[r][c]: required sum on the edge left of cell (r, c); hreq[r][c]: above it
        self.vreq = [[0] * (w + 1) for _ in range(h)]
        self.hreq = [[0] * w for _ in range(h + 1)]
        self.nodes = 0

    def _ok(self, r, c, b):
        t, g = self.t, self.grid
        w, h = self.w, self.h
        if c > 0 and g[r][c - 1] >= 0:
            s = t.hsum[g[r][c - 1]][b]
            if not s or (self.vreq[r][c] and s != self.vreq[r][c]):
                return False
        if c < w - 1 and g[r][c + 1] >= 0:
            s = t.hsum[b][g[r][c + 1]]
            if not s or (self.vreq[r][c + 1] and s != self.vreq[r][c + 1]):
                return False
        if r > 0 and g[r - 1][c] >= 0:
            s = t.vsum[g[r - 1][c]][b]
            if not s or (self.hreq[r][c] and s != self.hreq[r][c]):
                return False
        if r < h - 1 and g[r + 1][c] >= 0:
            s = t.vsum[b][g[r + 1][c]]
            if not s or (self.hreq[r + 1][c] and s != self.hreq[r + 1][c]):
                return False
        g[r][c] = b
        ok = True
        for vr, vc in ((r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)):
            if 0 < vr < h and 0 < vc < w:
                q = (g[vr - 1][vc - 1], g[vr - 1][vc], g[vr][vc - 1], g[vr][vc])
                if min(q) >= 0 and not t.vertex_ok(*q):
                    ok = False
                    break
        g[r][c] = -1
        return ok

    def solutions(self, limit: Optional[int] = None):
        order = [(r, c) for r in range(self.h) for c in range(self.w) if self.grid[r][c] < 0]
        found = []
        n = len(self.t)

        def rec(i):
            self.nodes += 1
            if i == len(order):
                found.append(tuple(x for row in self.grid for x in row))
                return limit is not None and len(found) >= limit
            r, c = order[i]
            for b in range(n):
                if self._ok(r, c, b):
                    self.grid[r][c] = b
                    stop = rec(i + 1)
                    self.grid[r][c] = -1
                    if stop:
                        return True
            return False

        rec(0)
        return found


def zone_contents(table: TileTable, w: int, h: int) -> list[tuple]:
    """All valid w x h fills whose interior lines are class 8."""
    f = _Filler(table, w, h)
    for r in range(h):
        for c in range(1, w):
            f.vreq[r][c] = INTERIOR
    for r in range(1, h):
        for c in range(w):
            f.hreq[r][c] = INTERIOR
    return f.solutions()


def surroundable(table: TileTable, zone: tuple, w: int, h: int, depth: int = 1) -> bool:
    """Can the zone be padded by `depth` rings with class-6 lines along its boundary?"""
    W, H = w + 2 * depth, h + 2 * depth
    f = _Filler(table, W, H)
    for r in range(h):
        for c in range(w):
            f.grid[r + depth][c + depth] = zone[r * w + c]
    for r in range(depth, depth + h):
        f.vreq[r][depth] = BOUNDARY
        f.vreq[r][depth + w] = BOUNDARY
    for c in range(depth, depth + w):
        f.hreq[depth][c] = BOUNDARY
        f.hreq[depth + h][c] = BOUNDARY
    return bool(f.solutions(limit=1))


def discover_supertiles(ts: Tileset, max_w: int = 3, max_h: int = 3, depth: int = 1,
                        table: Optional[TileTable] = None) -> list[Supertile]:
    """Surroundable zones up to max_w x max_h, one per rotation class, sorted."""
    if max_w < 1 or max_h < 1 or depth < 1:
        raise ValueError("max_w, max_h and depth must be at least 1")
    table = table or TileTable(ts)
    forms = set()
    for w in range(1, max_w + 1):
        for h in range(1, max_h + 1):
            for z in zone_contents(table, w, h):
                g = GridTiling(w, h, tuple(table.tiles[i] for i in z), ts)
                form = canonical_form(g, table)
                if form in forms:
                    continue
                if surroundable(table, z, w, h, depth):
                    forms.add(form)
    return [Supertile(from_form(f, ts), f) for f in sorted(forms)]


# ---------------------------------------------------------------- corner check

CROSSING = "crossing"
BOUNDARY_READING = "boundary"
READINGS = (CROSSING, BOUNDARY_READING)


@dataclass
class CornerReport:
    reading: str
    target_sum: int
    count: int
    examined: int
    counterexamples: list = field(default_factory=list)


def corner_redundancy_check(ts: Tileset, reading: str = CROSSING, target_sum: int = 6,
                            table: Optional[TileTable] = None) -> CornerReport:
    """Count 2x2 arrangements meeting the color and thickness conditions whose
    interior vertex sums to target_sum.

    reading "crossing": all four interior edges have thickness sum 6 (two
    class-6 lines cross, as at a supertile corner).
    reading "boundary": at least one of the two lines through the vertex has
    sum 6 on both of its edges, the other line only needs a legal sum.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    table = table or TileTable(ts)
    n = len(table)
    edges, corners = table.edges, table.corners
    legal = ts.rules.thickness_sums

    def pair(a, da, b, db):
        ea, eb = edges[a][da], edges[b][db]
        return ea.color == eb.color, ea.thickness + eb.thickness

    examined = 0
    bad = []
    for nw in range(n):
        for ne in range(n):
            top = pair(nw, E, ne, W)
            if not top[0]:
                continue
            for sw in range(n):
                left = pair(nw, S, sw, N)
                if not left[0]:
                    continue
                for se in range(n):
                    bottom = pair(sw, E, se, W)
                    right = pair(ne, S, se, N)
                    if not (bottom[0] and right[0]):
                        continue
                    sums = (top[1], bottom[1], left[1], right[1])
                    if reading == CROSSING:
                        if any(s != BOUNDARY for s in sums):
                            continue
                    else:
                        vertical6 = top[1] == BOUNDARY and bottom[1] == BOUNDARY
                        horizontal6 = left[1] == BOUNDARY and right[1] == BOUNDARY
                        if not (vertical6 or horizontal6) or any(s not in legal for s in sums):
                            continue
                    examined += 1
                    v = corners[nw][SE] + corners[ne][SW] + corners[sw][NE] + corners[se][NW]
                    if v == target_sum:
                        bad.append(tuple(table.tiles[i] for i in (nw, ne, sw, se)))
    return CornerReport(reading, target_sum, len(bad), examined, bad)
