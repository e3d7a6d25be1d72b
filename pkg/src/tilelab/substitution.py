"""Coarse (supertile) layer: coarse tiles, fixed-point rules, expansion and gap words."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import FREE, GridTiling, TileTable, line_classes, validate
from .model import (DIRS, EdgeDecoration, OrientedTile, Tileset, TilesetError, strip_comment)
from .zones import BOUNDARY, INTERIOR, Supertile, perimeter


class SubstitutionError(ValueError):
    pass


# ---------------------------------------------------------------- coarse tiles

@dataclass(frozen=True)
class CoarseTile:
    """A rectangle with per-segment edge decorations and no corner data.

    edges follow the perimeter clockwise: N left-to-right, E top-to-bottom,
    S right-to-left, W bottom-to-top. content is the base patch it stands for.
    """

    name: str
    width: int
    height: int
    edges: tuple[tuple[EdgeDecoration, ...], ...]
    content: Optional[GridTiling] = None

    def __post_init__(self):
        lens = [len(e) for e in self.edges]
        if lens != [self.width, self.height, self.width, self.height]:
            raise SubstitutionError(f"coarse tile {self.name!r}: segment counts {lens} do not fit "
                                    f"{self.width}x{self.height}")
        if self.content is not None and (self.content.width, self.content.height) != (self.width, self.height):
            raise SubstitutionError(f"coarse tile {self.name!r}: content size mismatch")


def rotate_edges(edges, k):
    k %= 4
    return tuple(edges[(d + k) % 4] for d in range(4))


@dataclass(frozen=True)
class CoarseTileset:
    name: str
    tiles: tuple[CoarseTile, ...]
    base: Optional[Tileset] = None
    thickness_sum: int = BOUNDARY

    def __post_init__(self):
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise SubstitutionError("duplicate coarse tile name")

    def __len__(self):
        return len(self.tiles)

    def by_name(self, name: str) -> CoarseTile:
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(f"unknown coarse tile {name!r}")

    def index(self, name: str) -> int:
        for i, t in enumerate(self.tiles):
            if t.name == name:
                return i
        raise KeyError(f"unknown coarse tile {name!r}")

    def subset(self, names) -> "CoarseTileset":
        keep = set(names)
        return CoarseTileset(self.name, tuple(t for t in self.tiles if t.name in keep), self.base,
                             self.thickness_sum)


class CoarseOriented(tuple):
    """(tile name, rot) for a coarse tile turned rot quarter-turns counter-clockwise."""

    def __new__(cls, name: str, rot: int = 0):
        return super().__new__(cls, (name, rot % 4))

    @property
    def name(self) -> str:
        return self[0]

    @property
    def rot(self) -> int:
        return self[1]

    @property
    def token(self) -> str:
        return f"{self[0]}r{self[1]}"

    @classmethod
    def from_token(cls, tok: str) -> "CoarseOriented":
        m = re.fullmatch(r"(.+)r([0-3])", tok)
        if m:
            return cls(m.group(1), int(m.group(2)))
        return cls(tok, 0)


def segments_match(a: Sequence[EdgeDecoration], b: Sequence[EdgeDecoration], total: int) -> bool:
    """Abutting sides: a read along its own clockwise direction meets b reversed."""
    if len(a) != len(b):
        return False
    n = len(a)
    for i in range(n):
        x, y = a[i], b[n - 1 - i]
        if x.color != y.color or x.thickness + y.thickness != total:
            return False
    return True


class CoarseTable:
    """Integer-indexed distinct orientations of coarse tiles, with pair tables.

    hsum/vsum hold the boundary sum when the pair matches and 0 otherwise, so
    the search module can drive coarse tilings unchanged.
    """

    def __init__(self, cts: CoarseTileset):
        self.cts = cts
        self.tiles: list[CoarseOriented] = []
        self.sizes: list[tuple[int, int]] = []
        self.edges = []
        for t in cts.tiles:
            seen = set()
            for r in range(4):
                e = rotate_edges(t.edges, r)
                size = (t.width, t.height) if r % 2 == 0 else (t.height, t.width)
                content = None
                if t.content is not None:
                    content = _canon_cells(t.content.rotated(r))
                key = (e, content)
                if key in seen:
                    continue
                seen.add(key)
                self.tiles.append(CoarseOriented(t.name, r))
                self.sizes.append(size)
                self.edges.append(e)
        n = len(self.tiles)
        s = cts.thickness_sum
        self.hsum = [[s if segments_match(self.edges[a][1], self.edges[b][3], s) else 0 for b in range(n)]
                     for a in range(n)]
        self.vsum = [[s if segments_match(self.edges[a][2], self.edges[b][0], s) else 0 for b in range(n)]
                     for a in range(n)]
        self.index = {t: i for i, t in enumerate(self.tiles)}
        self._alias: dict = {}

    def __len__(self):
        return len(self.tiles)

    @staticmethod
    def member(t: CoarseOriented, allowed) -> bool:
        return t.name in allowed

    def lookup(self, t: CoarseOriented) -> int:
        hit = self.index.get(t)
        if hit is None:
            hit = self._alias.get(t)
        if hit is None:
            hit = self._alias[t] = self._resolve(t)
        return hit

    def _resolve(self, t: CoarseOriented) -> int:
        # a symmetric tile: find the listed rotation with the same decorations
        tile = self.cts.by_name(t.name)
        e = rotate_edges(tile.edges, t.rot)
        for i, o in enumerate(self.tiles):
            if o.name == t.name and self.edges[i] == e:
                if tile.content is None or _canon_cells(tile.content.rotated(o.rot)) == \
                        _canon_cells(tile.content.rotated(t.rot)):
                    return i
        raise KeyError(f"{t} is not an orientation of a known coarse tile")

    def canonical(self, t: CoarseOriented) -> CoarseOriented:
        return self.tiles[self.lookup(t)]


def _canon_cells(g: GridTiling) -> tuple:
    table = _table_for(g.tileset)
    return (g.width, g.height, tuple(table.tiles[table.lookup(c)] for c in g.cells))


_TABLES: dict = {}


def _table_for(ts: Tileset) -> TileTable:
    hit = _TABLES.get(id(ts))
    if hit is None or hit.tileset is not ts:
        hit = TileTable(ts)
        _TABLES[id(ts)] = hit
    return hit


def coarse_name(w: int, h: int, k: int) -> str:
    return f"{w}x{h}{'abcdefghijklmnopqrstuvwxyz'[k]}"


def derive_coarse_tileset(supertiles: Sequence[Supertile], name: str = "coarse") -> CoarseTileset:
    """One corner-free coarse tile per supertile, named by size and rank."""
    if not supertiles:
        return CoarseTileset(name, ())
    base = supertiles[0].content.tileset
    for st in supertiles:
        if st.content.tileset is not base and st.content.tileset != base:
            raise SubstitutionError("supertiles come from different base tilesets")
    tiles = []
    counts: dict = {}
    for st in supertiles:
        key = (st.width, st.height)
        k = counts.get(key, 0)
        counts[key] = k + 1
        tiles.append(CoarseTile(coarse_name(st.width, st.height, k), st.width, st.height,
                                perimeter(st.content), st.content))
    return CoarseTileset(name, tuple(tiles), base)


@dataclass
class RedundancyReport:
    pairs_checked: int
    color_only_matches: int
    implied: bool
    examples: list = field(default_factory=list)


def thickness_redundancy(cts: CoarseTileset) -> RedundancyReport:
    """Is the thickness-sum condition implied by color equality for every abutting pair?"""
    table = CoarseTable(cts)
    n = len(table)
    checked = 0
    extra = []
    for a in range(n):
        for b in range(n):
            for da, db in ((1, 3), (2, 0)):
                ea, eb = table.edges[a][da], table.edges[b][db]
                if len(ea) != len(eb):
                    continue
                checked += 1
                colors = all(x.color == y.color for x, y in zip(ea, reversed(eb)))
                if colors and not segments_match(ea, eb, cts.thickness_sum):
                    extra.append((table.tiles[a], table.tiles[b], "E-W" if da == 1 else "S-N"))
    return RedundancyReport(checked, len(extra), not extra, extra[:10])


# ---------------------------------------------------------------- coarse file format

def serialize_coarse(cts: CoarseTileset) -> str:
    base = cts.base.name if cts.base is not None else "-"
    out = [f"coarse {cts.name} base={base} thickness_sum={cts.thickness_sum}"]
    for t in cts.tiles:
        out.append(f"tile {t.name} size {t.width}x{t.height}")
        for d, side in zip(DIRS, t.edges):
            out.append(f"  edge {d} colors={','.join(str(e.color) for e in side)} "
                       f"thickness={','.join(str(e.thickness) for e in side)}")
        if t.content is not None:
            for row in t.content.rows():
                out.append("  row " + " ".join(c.token for c in row))
    return "\n".join(out) + "\n"


def parse_coarse(text: str, base: Optional[Tileset] = None) -> CoarseTileset:
    name = None
    total = BOUNDARY
    tiles = []
    cur = None

    def finish():
        if cur is None:
            return
        tname, w, h, edges, rows, lineno = cur
        if len(edges) != 4:
            raise TilesetError(f"coarse tile {tname!r} is missing edges", lineno)
        content = None
        if rows:
            if base is None:
                raise TilesetError("coarse tile content needs the base tileset", lineno)
            try:
                content = GridTiling.from_rows(rows, base)
            except ValueError as exc:
                raise TilesetError(str(exc), lineno) from None
        try:
            tiles.append(CoarseTile(tname, w, h, tuple(edges[d] for d in range(4)), content))
        except SubstitutionError as exc:
            raise TilesetError(str(exc), lineno) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if parts[0] == "coarse":
            name = parts[1] if len(parts) > 1 else None
            for p in parts[2:]:
                k, _, v = p.partition("=")
                if k == "thickness_sum":
                    total = int(v)
                elif k == "base":
                    if base is not None and v not in ("-", base.name):
                        raise TilesetError(f"coarse file expects base tileset {v!r}", lineno)
                else:
                    raise TilesetError(f"unknown key {k!r}", lineno)
        elif parts[0] == "tile":
            finish()
            m = re.fullmatch(r"(\d+)x(\d+)", parts[3]) if len(parts) == 4 and parts[2] == "size" else None
            if not m:
                raise TilesetError("expected 'tile <name> size <w>x<h>'", lineno)
            if any(t.name == parts[1] for t in tiles) or (cur and cur[0] == parts[1]):
                raise TilesetError(f"duplicate coarse tile {parts[1]!r}", lineno)
            cur = (parts[1], int(m.group(1)), int(m.group(2)), {}, [], lineno)
        elif parts[0] == "edge":
            if cur is None or len(parts) != 4 or parts[1] not in DIRS:
                raise TilesetError("expected 'edge <dir> colors=.. thickness=..' inside a tile", lineno)
            kv = dict(p.split("=", 1) for p in parts[2:])
            try:
                cols = [int(x) for x in kv["colors"].split(",")]
                ths = [int(x) for x in kv["thickness"].split(",")]
            except (KeyError, ValueError):
                raise TilesetError("bad edge segment list", lineno) from None
            if len(cols) != len(ths):
                raise TilesetError("colors and thickness lists differ in length", lineno)
            d = DIRS.index(parts[1])
            if d in cur[3]:
                raise TilesetError(f"edge {parts[1]} given twice", lineno)
            cur[3][d] = tuple(EdgeDecoration(c, t) for c, t in zip(cols, ths))
        elif parts[0] == "row":
            if cur is None:
                raise TilesetError("row outside a tile", lineno)
            cur[4].append([OrientedTile.from_token(t) for t in parts[1:]])
        else:
            raise TilesetError(f"unknown directive {parts[0]!r}", lineno)
    finish()
    if name is None:
        raise TilesetError("missing 'coarse <name>' header")
    return CoarseTileset(name, tuple(tiles), base, total)


# ---------------------------------------------------------------- coarse tilings

@dataclass(frozen=True)
class CoarseTiling:
    width: int  # in coarse cells
    height: int
    cells: tuple[CoarseOriented, ...]

    @classmethod
    def from_rows(cls, rows) -> "CoarseTiling":
        h = len(rows)
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise SubstitutionError("ragged coarse rows")
        return cls(w, h, tuple(CoarseOriented(*c) for row in rows for c in row))

    def at(self, r, c) -> CoarseOriented:
        return self.cells[r * self.width + c]

    def rows(self):
        return [list(self.cells[i:i + self.width]) for i in range(0, len(self.cells), self.width)]

    def rotated(self, k: int = 1) -> "CoarseTiling":
        t = self
        for _ in range(k % 4):
            old = t.rows()
            w, h = t.width, t.height
            t = CoarseTiling.from_rows([[CoarseOriented(old[c][w - 1 - r].name, old[c][w - 1 - r].rot + 1)
                                         for c in range(h)] for r in range(w)])
        return t

    def format(self, name: str = "patch", tileset: str = "coarse") -> str:
        lines = [f"tiling {name} {self.width} {self.height} tileset={tileset}"]
        for row in self.rows():
            lines.append(" ".join(c.token for c in row))
        return "\n".join(lines) + "\n"


def coarse_violations(p: CoarseTiling, table: CoarseTable) -> list[tuple]:
    """Mismatched seams as ((r1, c1), (r2, c2)) pairs."""
    out = []
    idx = [[table.lookup(c) for c in row] for row in p.rows()]
    for r in range(p.height):
        for c in range(p.width):
            if c + 1 < p.width and not table.hsum[idx[r][c]][idx[r][c + 1]]:
                out.append(((r, c), (r, c + 1)))
            if r + 1 < p.height and not table.vsum[idx[r][c]][idx[r + 1][c]]:
                out.append(((r, c), (r + 1, c)))
    return out


def band_sizes(p: CoarseTiling, table: CoarseTable) -> tuple[list[int], list[int]]:
    """Column widths and row heights in base cells; raises if bands are ragged."""
    widths, heights = [], []
    for c in range(p.width):
        ws = {table.sizes[table.lookup(p.at(r, c))][0] for r in range(p.height)}
        if len(ws) != 1:
            raise SubstitutionError(f"coarse column {c} has mixed widths {sorted(ws)}")
        widths.append(ws.pop())
    for r in range(p.height):
        hs = {table.sizes[table.lookup(p.at(r, c))][1] for c in range(p.width)}
        if len(hs) != 1:
            raise SubstitutionError(f"coarse row {r} has mixed heights {sorted(hs)}")
        heights.append(hs.pop())
    return widths, heights


def to_base(p: CoarseTiling, cts: CoarseTileset, table: Optional[CoarseTable] = None) -> GridTiling:
    """Substitute each coarse tile's base content."""
    table = table or CoarseTable(cts)
    if cts.base is None:
        raise SubstitutionError("coarse tileset has no base tileset")
    widths, heights = band_sizes(p, table)
    W, H = sum(widths), sum(heights)
    grid: list[list] = [[None] * W for _ in range(H)]
    y = 0
    for r in range(p.height):
        x = 0
        for c in range(p.width):
            o = p.at(r, c)
            tile = cts.by_name(o.name)
            if tile.content is None:
                raise SubstitutionError(f"coarse tile {o.name!r} carries no base content")
            block = tile.content.rotated(o.rot).rows()
            for i, row in enumerate(block):
                grid[y + i][x:x + len(row)] = row
            x += widths[c]
        y += heights[r]
    return GridTiling.from_rows(grid, cts.base)


# ---------------------------------------------------------------- substitution rules

@dataclass(frozen=True)
class SubstitutionRule:
    source: str
    expansion: CoarseTiling
    anchor: tuple[int, int]  # (x, y) = (column, row) inside the expansion

    def rotated(self, k: int) -> tuple[CoarseTiling, tuple[int, int]]:
        """Expansion and anchor for the source tile turned k quarter-turns."""
        e = self.expansion
        x, y = self.anchor
        for _ in range(k % 4):
            # rotating CCW: new[r][c] = old[c][w-1-r], so old (x, y) lands at (y, w-1-x)
            x, y = y, e.width - 1 - x
            e = e.rotated(1)
        return e, (x, y)


def check_rule(rule: SubstitutionRule, cts: CoarseTileset, table: Optional[CoarseTable] = None) -> None:
    table = table or CoarseTable(cts)
    cts.by_name(rule.source)
    e = rule.expansion
    x, y = rule.anchor
    if not (0 <= x < e.width and 0 <= y < e.height):
        raise SubstitutionError(f"rule {rule.source}: anchor {rule.anchor} outside the expansion")
    bad = coarse_violations(e, table)
    if bad:
        (r1, c1), (r2, c2) = bad[0]
        raise SubstitutionError(f"rule {rule.source}: expansion seam between cells ({r1},{c1}) and "
                                f"({r2},{c2}) does not match")
    band_sizes(e, table)
    at = table.canonical(e.at(y, x))
    if at != table.canonical(CoarseOriented(rule.source, 0)):
        raise SubstitutionError(f"rule {rule.source}: anchor holds {at.token}, not the source tile")


def load_rules(text: str, cts: CoarseTileset) -> dict[str, SubstitutionRule]:
    """Parse a rules file and verify every rule; one rule per coarse tile."""
    rules = {}
    table = CoarseTable(cts)
    lines = [(i, strip_comment(raw)) for i, raw in enumerate(text.splitlines(), 1)]
    lines = [(i, l) for i, l in lines if l]
    k = 0
    while k < len(lines):
        lineno, head = lines[k]
        m = re.fullmatch(r"rule\s+(\S+)\s+anchor\s+(\d+),(\d+)", head)
        if not m:
            raise TilesetError("expected 'rule <tile> anchor <x>,<y>'", lineno)
        src = m.group(1)
        if k + 1 >= len(lines):
            raise TilesetError("rule without an expansion", lineno)
        tl, theader = lines[k + 1]
        parts = theader.split()
        if parts[0] != "tiling" or len(parts) != 5:
            raise TilesetError("expected a tiling header after the rule line", tl)
        w, h = int(parts[2]), int(parts[3])
        rows = []
        for j in range(h):
            if k + 2 + j >= len(lines):
                raise TilesetError("expansion ended early", tl)
            rl, row = lines[k + 2 + j]
            toks = row.split()
            if len(toks) != w:
                raise TilesetError(f"expected {w} tokens, got {len(toks)}", rl)
            rows.append([CoarseOriented.from_token(t) for t in toks])
        try:
            cts.by_name(src)
        except KeyError:
            raise TilesetError(f"rule for unknown coarse tile {src!r}", lineno) from None
        if src in rules:
            raise TilesetError(f"second rule for {src!r}", lineno)
        rule = SubstitutionRule(src, CoarseTiling.from_rows(rows), (int(m.group(2)), int(m.group(3))))
        for c in rule.expansion.cells:
            try:
                table.lookup(c)
            except KeyError:
                raise TilesetError(f"rule {src}: unknown tile {c.token}", lineno) from None
        check_rule(rule, cts, table)
        rules[src] = rule
        k += 2 + h
    missing = [t.name for t in cts.tiles if t.name not in rules]
    if missing:
        raise SubstitutionError(f"no rule for coarse tiles {missing}")
    return rules


def serialize_rules(rules: dict[str, SubstitutionRule], cts: CoarseTileset) -> str:
    out = []
    for t in cts.tiles:
        r = rules[t.name]
        out.append(f"rule {r.source} anchor {r.anchor[0]},{r.anchor[1]}")
        out.append(r.expansion.format(f"expand-{r.source}", cts.name).rstrip("\n"))
    return "\n".join(out) + "\n"


def expand(p: CoarseTiling, rules: dict[str, SubstitutionRule], cts: CoarseTileset,
           table: Optional[CoarseTable] = None) -> CoarseTiling:
    """Replace every coarse tile by its (rotated) expansion and check every seam."""
    table = table or CoarseTable(cts)
    blocks = []
    for r in range(p.height):
        row = []
        for c in range(p.width):
            o = p.at(r, c)
            if o.name not in rules:
                raise SubstitutionError(f"no rule for coarse tile {o.name!r}")
            row.append(rules[o.name].rotated(o.rot)[0])
        blocks.append(row)
    for r in range(p.height):
        hs = {b.height for b in blocks[r]}
        if len(hs) != 1:
            raise SubstitutionError(f"expansions in coarse row {r} differ in height")
    for c in range(p.width):
        ws = {blocks[r][c].width for r in range(p.height)}
        if len(ws) != 1:
            raise SubstitutionError(f"expansions in coarse column {c} differ in width")
    out_rows = []
    for r in range(p.height):
        for i in range(blocks[r][0].height):
            line = []
            for c in range(p.width):
                line.extend(blocks[r][c].rows()[i])
            out_rows.append(line)
    result = CoarseTiling.from_rows(out_rows)
    bad = coarse_violations(result, table)
    if bad:
        # locate the seam in source coordinates
        (r1, c1), (r2, c2) = bad[0]
        ys = _offsets([blocks[r][0].height for r in range(p.height)])
        xs = _offsets([blocks[0][c].width for c in range(p.width)])
        src1 = (_which(ys, r1), _which(xs, c1))
        src2 = (_which(ys, r2), _which(xs, c2))
        raise SubstitutionError(f"seam between expansions of source cells {src1} and {src2} does not match")
    return result


def _offsets(sizes):
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def _which(offsets, v):
    k = 0
    for i, o in enumerate(offsets):
        if v >= o:
            k = i
    return k


def anchor_offset(p: CoarseTiling, rules, cts, r: int, c: int) -> tuple[int, int]:
    """Where the expansion of source cell (r, c) starts inside expand(p), as (row, col)."""
    y = sum(rules[p.at(i, 0).name].rotated(p.at(i, 0).rot)[0].height for i in range(r))
    x = sum(rules[p.at(0, j).name].rotated(p.at(0, j).rot)[0].width for j in range(c))
    return y, x


def iterate(seed: CoarseOriented, k: int, rules, cts, table=None) -> CoarseTiling:
    table = table or CoarseTable(cts)
    p = CoarseTiling(1, 1, (CoarseOriented(*seed),))
    for _ in range(k):
        p = expand(p, rules, cts, table)
    return p


def generate_plane_patch(seed: str, k: int, rules, cts: CoarseTileset, table=None) -> GridTiling:
    """Expand the seed k times and substitute base content."""
    if k < 0:
        raise ValueError("k must be non-negative")
    table = table or CoarseTable(cts)
    return to_base(iterate(CoarseOriented(seed, 0), k, rules, cts, table), cts, table)


def _symbol(size: int) -> str:
    if size == 2:
        return "S"
    if size == 3:
        return "D"
    raise SubstitutionError(f"band of size {size} has no gap symbol")


def discover_rules(cts: CoarseTileset, table: Optional[CoarseTable] = None) -> dict[str, SubstitutionRule]:
    """Search a fixed-point rule for every coarse tile.

    The expansion of a w x h tile uses the bands substitute_1d gives for the
    tile's own gap symbols, so the 2-D expansion matches the 1-D morphism by
    construction. Cells are filled by backtracking over oriented coarse tiles
    of the right size; the anchor is the first cell (row-major) that can hold
    the source unrotated.
    """
    table = table or CoarseTable(cts)
    rules = {}
    for tile in cts.tiles:
        cols = [2 if ch == "S" else 3 for ch in MORPHISM[_symbol(tile.width)]]
        rows = [2 if ch == "S" else 3 for ch in MORPHISM[_symbol(tile.height)]]
        rule = None
        for y, x in ((y, x) for y in range(len(rows)) for x in range(len(cols))):
            if (cols[x], rows[y]) != (tile.width, tile.height):
                continue
            cells = _fill_bands(table, cols, rows, {(y, x): table.lookup(CoarseOriented(tile.name, 0))})
            if cells is not None:
                rule = SubstitutionRule(tile.name, CoarseTiling.from_rows(
                    [[table.tiles[cells[r][c]] for c in range(len(cols))] for r in range(len(rows))]), (x, y))
                break
        if rule is None:
            raise SubstitutionError(f"no fixed-point rule found for {tile.name!r}")
        check_rule(rule, cts, table)
        rules[tile.name] = rule
    return rules


def _fill_bands(table: CoarseTable, cols, rows, fixed):
    h, w = len(rows), len(cols)
    grid = [[-1] * w for _ in range(h)]
    for (r, c), i in fixed.items():
        grid[r][c] = i
    order = [(r, c) for r in range(h) for c in range(w)]

    def fits(r, c, i):
        if table.sizes[i] != (cols[c], rows[r]):
            return False
        if c > 0 and not table.hsum[grid[r][c - 1]][i]:
            return False
        if r > 0 and not table.vsum[grid[r - 1][c]][i]:
            return False
        if c + 1 < w and grid[r][c + 1] >= 0 and not table.hsum[i][grid[r][c + 1]]:
            return False
        if r + 1 < h and grid[r + 1][c] >= 0 and not table.vsum[i][grid[r + 1][c]]:
            return False
        return True

    def rec(k):
        if k == len(order):
            return True
        r, c = order[k]
        if (r, c) in fixed:
            return fits(r, c, grid[r][c]) and rec(k + 1)
        for i in range(len(table)):
            if fits(r, c, i):
                grid[r][c] = i
                if rec(k + 1):
                    return True
        grid[r][c] = -1
        return False

    return grid if rec(0) else None


# ---------------------------------------------------------------- gap words

class GapWord(str):
    """A word over S (one class-8 line between delimiters) and D (two)."""

    def __new__(cls, s: str = ""):
        if any(ch not in "SD" for ch in s):
            raise ValueError(f"gap words use only S and D: {s!r}")
        return super().__new__(cls, s)

    def bits(self) -> str:
        return "1" + "".join("01" if ch == "S" else "001" for ch in self)


MORPHISM = {"S": "SDSDS", "D": "SDSDSDS"}


def substitute_1d(w: str) -> GapWord:
    return GapWord("".join(MORPHISM[ch] for ch in GapWord(w)))


def iterate_1d(w: str, k: int) -> GapWord:
    w = GapWord(w)
    for _ in range(k):
        w = substitute_1d(w)
    return w


def word_from_bits(bits: str) -> GapWord:
    if not bits or bits[0] != "1" or bits[-1] != "1":
        raise SubstitutionError("bit string must start and end with a delimiter 1")
    out = []
    for run in bits[1:-1].split("1"):
        if len(run) == 1:
            out.append("S")
        elif len(run) == 2:
            out.append("D")
        else:
            raise SubstitutionError(f"run of {len(run)} zeros between delimiters")
    return GapWord("".join(out))


def line_sequence(p, axis: str, cts: Optional[CoarseTileset] = None) -> GapWord:
    """Gap word of a base tiling or a coarse tiling along one axis.

    The outer border of the patch counts as a delimiter, so a patch cut along
    class-6 lines gives its full word.
    """
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    if isinstance(p, CoarseTiling):
        if cts is None:
            raise ValueError("a coarse tiling needs its coarse tileset")
        widths, heights = band_sizes(p, CoarseTable(cts))
        sizes = widths if axis == "x" else heights
        bits = "1" + "".join("0" * (s - 1) + "1" for s in sizes)
        return word_from_bits(bits)
    classes = line_classes(p, axis)
    bits = ["1"]
    for k in classes:
        if k == BOUNDARY:
            bits.append("1")
        elif k == INTERIOR:
            bits.append("0")
        else:
            raise SubstitutionError(f"line class {k} cannot be encoded")
    bits.append("1")
    return word_from_bits("".join(bits))


def smallest_period(w: str, max_p: int) -> Optional[int]:
    if max_p >= len(w):
        raise ValueError("max_p must be smaller than the word length")
    for p in range(1, max_p + 1):
        if all(w[i] == w[i + p] for i in range(len(w) - p)):
            return p
    return None


def oeis_match(w: str, reference: Sequence[int], max_shift: int = 3, window: Optional[int] = None):
    """Smallest shift s <= max_shift with rendered[s:s+window] == reference[:window], else None."""
    rendered = [int(b) for b in GapWord(w).bits()]
    window = len(reference) if window is None else window
    if len(reference) < window:
        raise ValueError("reference shorter than the comparison window")
    ref = list(reference[:window])
    for s in range(max_shift + 1):
        if len(rendered) - s < window:
            break
        if rendered[s:s + window] == ref:
            return s
    return None


def load_bits(text: str) -> list[int]:
    """Read a reference bit file: '#' comments, then 0/1 digits (b-file 'n value' lines accepted)."""
    out = []
    for raw in text.splitlines():
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        vals = parts[1:] if len(parts) == 2 else parts
        for v in vals:
            for ch in v:
                if ch not in "01":
                    raise ValueError(f"non-binary symbol {ch!r} in reference")
                out.append(int(ch))
    return out
