"""Backtracking enumeration of patches and torus tilings.

The core works on any tile table exposing ``hsum``/``vsum`` pair tables
(0 = incompatible), an optional ``vertex_ok`` predicate and a list of
oriented tiles, so the same code serves base tiles and coarse tiles.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .engine import FREE, TORUS, GridTiling, TileTable
from .model import Tileset


@dataclass(frozen=True)
class SearchConfig:
    width: int
    height: int
    boundary: str = FREE
    max_results: Optional[int] = None
    prune_line_class: bool = True
    tile_filter: Optional[frozenset] = None
    workers: int = 1

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be at least 1")
        if self.max_results is not None and self.max_results < 1:
            raise ValueError("max_results must be at least 1")
        if self.boundary not in (FREE, TORUS):
            raise ValueError(f"unknown boundary policy {self.boundary!r}")


@dataclass
class SearchResult:
    tilings: list = field(default_factory=list)
    count: int = 0
    nodes_explored: int = 0
    exhausted: bool = True


@dataclass(frozen=True)
class AtLeast:
    """Marker for 'a tiling exists at the search limit'."""

    n: int

    def __str__(self):
        return f"AT_LEAST({self.n})"


def lines_constant(table) -> bool:
    """True when every valid 2x2 patch has equal sums across both of its lines.

    When this holds, any valid tiling has constant line classes (adjacent rows
    share a 2x2 window), so rejecting a candidate that disagrees with an
    already-fixed line class never loses a solution.
    """
    n = len(table)
    hs, vs = table.hsum, table.vsum
    vok = getattr(table, "vertex_ok", None)
    for nw in range(n):
        for ne in range(n):
            if not hs[nw][ne]:
                continue
            for sw in range(n):
                if not vs[nw][sw]:
                    continue
                for se in range(n):
                    if not hs[sw][se] or not vs[ne][se]:
                        continue
                    if vok is not None and not vok(nw, ne, sw, se):
                        continue
                    if hs[nw][ne] != hs[sw][se] or vs[nw][sw] != vs[ne][se]:
                        return False
    return True


class _Search:
    def __init__(self, table, width, height, torus=False, allowed=None, prune=True):
        self.t = table
        self.w, self.h = width, height
        self.torus = torus
        n = len(table)
        self.allowed = list(range(n)) if allowed is None else sorted(allowed)
        self.vok = getattr(table, "vertex_ok", None)
        self.prune = prune and _constant_cached(table)
        self.nodes = 0
        self.grid = [[-1] * width for _ in range(height)]
        # per-line class seen so far, for pruning
        self.vclass = [0] * (width + 1)
        self.hclass = [0] * (height + 1)

    def candidates(self, r, c):
        t, g = self.t, self.grid
        w, h = self.w, self.h
        out = []
        left = g[r][c - 1] if c > 0 else -1
        up = g[r - 1][c] if r > 0 else -1
        wrap_right = g[r][0] if (self.torus and c == w - 1) else -1
        wrap_down = g[0][c] if (self.torus and r == h - 1) else -1
        for b in self.allowed:
            if left >= 0:
                s = t.hsum[left][b]
                if not s or (self.prune and self.vclass[c] and s != self.vclass[c]):
                    continue
            if up >= 0:
                s = t.vsum[up][b]
                if not s or (self.prune and self.hclass[r] and s != self.hclass[r]):
                    continue
            if wrap_right >= 0 and not t.hsum[b][wrap_right]:
                continue
            if wrap_down >= 0 and not t.vsum[b][wrap_down]:
                continue
            if self.torus and ((w == 1 and not t.hsum[b][b]) or (h == 1 and not t.vsum[b][b])):
                continue
            if self.vok is not None and not self._vertices_ok(r, c, b):
                continue
            out.append(b)
        return out

    def _vertices_ok(self, r, c, b):
        g = self.grid
        return not (r > 0 and c > 0 and not self.vok(g[r - 1][c - 1], g[r - 1][c], g[r][c - 1], b))

    def _wrap_vertices_ok(self):
        g, vok = self.grid, self.vok
        w, h = self.w, self.h
        for r in range(h):
            for c in range(w):
                if r > 0 and c > 0:
                    continue
                if not vok(g[r - 1][c - 1], g[r - 1][c], g[r][c - 1], g[r][c]):
                    return False
        return True

    def _place(self, r, c, b):
        self.grid[r][c] = b
        saved = (self.vclass[c], self.hclass[r])
        if c > 0 and not self.vclass[c]:
            self.vclass[c] = self.t.hsum[self.grid[r][c - 1]][b]
        if r > 0 and not self.hclass[r]:
            self.hclass[r] = self.t.vsum[self.grid[r - 1][c]][b]
        return saved

    def _unplace(self, r, c, saved):
        self.grid[r][c] = -1
        self.vclass[c], self.hclass[r] = saved

    def run(self, visit: Callable[[list], bool], prefix: Optional[list] = None) -> bool:
        """Depth-first fill in row-major order; visit returns True to stop."""
        w, h = self.w, self.h
        cells = w * h
        start = 0
        if prefix:
            for i, b in enumerate(prefix):
                self._place(i // w, i % w, b)
            start = len(prefix)

        def rec(i):
            self.nodes += 1
            if i == cells:
                if self.torus and self.vok is not None and not self._wrap_vertices_ok():
                    return False
                return visit(self.grid)
            r, c = divmod(i, w)
            for b in self.candidates(r, c):
                saved = self._place(r, c, b)
                stop = rec(i + 1)
                self._unplace(r, c, saved)
                if stop:
                    return True
            return False

        return rec(start)


_CONST_CACHE: dict = {}


def _constant_cached(table) -> bool:
    key = id(table)
    hit = _CONST_CACHE.get(key)
    if hit is None or hit[0] is not table:
        hit = (table, lines_constant(table))
        _CONST_CACHE[key] = hit
    return hit[1]


def _allowed_indices(table, tile_filter) -> Optional[list]:
    if tile_filter is None:
        return None
    return [i for i, t in enumerate(table.tiles) if table.member(t, tile_filter)]


def _branch(args):
    table, w, h, torus, allowed, prune, prefix, cap = args
    s = _Search(table, w, h, torus, allowed, prune)
    found = []

    def visit(grid):
        found.append(tuple(x for row in grid for x in row))
        return cap is not None and len(found) >= cap

    # the prefix must itself be consistent
    s.run(visit, prefix)
    return found, s.nodes


def _first_row_prefixes(table, w, h, torus, allowed, prune, depth):
    s = _Search(table, w, h, torus, allowed, prune)
    out = []
    depth = min(depth, w * h)

    def rec(i, acc):
        if i == depth:
            out.append(list(acc))
            return
        r, c = divmod(i, w)
        for b in s.candidates(r, c):
            saved = s._place(r, c, b)
            acc.append(b)
            rec(i + 1, acc)
            acc.pop()
            s._unplace(r, c, saved)

    rec(0, [])
    return out


def enumerate_indices(table, width, height, *, torus=False, allowed=None, prune=True,
                      max_results=None, workers=1):
    """Return (sorted index tuples, nodes, exhausted)."""
    if len(table) == 0 or (allowed is not None and not allowed):
        return [], 0, True
    if workers <= 1:
        s = _Search(table, width, height, torus, allowed, prune)
        found = []

        def visit(grid):
            found.append(tuple(x for row in grid for x in row))
            return max_results is not None and len(found) >= max_results

        stopped = s.run(visit)
        found.sort()
        return found, s.nodes, not stopped
    prefixes = _first_row_prefixes(table, width, height, torus, allowed, prune, min(2, width))
    jobs = [(table, width, height, torus, allowed, prune, p, max_results) for p in prefixes]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_branch, jobs))
    found = sorted(x for f, _ in parts for x in f)
    nodes = sum(n for _, n in parts)
    exhausted = True
    if max_results is not None and len(found) >= max_results:
        # keep the canonically smallest ones; the branch order matches the serial order
        exhausted = False
        found = found[:max_results]
    return found, nodes, exhausted


def _to_grid(idx, table, w, h, ts):
    tiles = table.tiles
    return GridTiling(w, h, tuple(tiles[i] for i in idx), ts)


def enumerate_tilings(cfg: SearchConfig, ts: Tileset, table: Optional[TileTable] = None) -> SearchResult:
    """All complete tilings of cfg.width x cfg.height valid under cfg.boundary."""
    table = table or TileTable(ts)
    allowed = _allowed_indices(table, cfg.tile_filter)
    found, nodes, exhausted = enumerate_indices(
        table, cfg.width, cfg.height, torus=cfg.boundary == TORUS, allowed=allowed,
        prune=cfg.prune_line_class, max_results=cfg.max_results, workers=cfg.workers)
    grids = [_to_grid(f, table, cfg.width, cfg.height, ts) for f in found]
    return SearchResult(grids, len(grids), nodes, exhausted)


def count_tilings(table, width, height, *, visit=None, torus=False, prune=True) -> tuple[int, int]:
    """Stream every tiling through visit(grid) without storing; return (count, nodes)."""
    s = _Search(table, width, height, torus, None, prune)
    n = [0]

    def cb(grid):
        n[0] += 1
        if visit is not None:
            visit(grid)
        return False

    s.run(cb)
    return n[0], s.nodes


def enumerate_torus(m: int, n: int, ts: Tileset, tile_filter=None, max_results=None) -> SearchResult:
    """Tilings of an m-wide, n-tall torus; each one is a periodic plane tiling."""
    return enumerate_tilings(SearchConfig(m, n, TORUS, max_results, True, tile_filter), ts)


def naive_enumerate(ts: Tileset, width: int, height: int, boundary: str = FREE) -> list[GridTiling]:
    """Generate-and-filter oracle: every assignment of distinct orientations, kept if valid."""
    import itertools

    from .engine import validate

    tiles = ts.orientations()
    out = []
    for combo in itertools.product(tiles, repeat=width * height):
        g = GridTiling(width, height, tuple(combo), ts)
        if not validate(g, boundary):
            out.append(g)
    out.sort(key=lambda g: g.key())
    return out


def exists_square(table, n, allowed=None, mrv=False) -> bool:
    """Is there at least one valid n x n FREE tiling using the allowed tiles?"""
    if n == 0:
        return True
    if len(table) == 0 or (allowed is not None and not allowed):
        return False
    if mrv:
        return _exists_mrv(table, n, allowed)
    s = _Search(table, n, n, False, allowed, True)
    return s.run(lambda grid: True)


def _exists_mrv(table, n, allowed):
    """Existence check filling the most constrained cell first."""
    allowed = list(range(len(table))) if allowed is None else sorted(allowed)
    hs, vs = table.hsum, table.vsum
    vok = getattr(table, "vertex_ok", None)
    grid = [[-1] * n for _ in range(n)]

    def cands(r, c):
        out = []
        for b in allowed:
            if c > 0 and grid[r][c - 1] >= 0 and not hs[grid[r][c - 1]][b]:
                continue
            if c < n - 1 and grid[r][c + 1] >= 0 and not hs[b][grid[r][c + 1]]:
                continue
            if r > 0 and grid[r - 1][c] >= 0 and not vs[grid[r - 1][c]][b]:
                continue
            if r < n - 1 and grid[r + 1][c] >= 0 and not vs[b][grid[r + 1][c]]:
                continue
            if vok is not None:
                grid[r][c] = b
                ok = True
                for vr, vc in ((r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)):
                    if 0 < vr < n and 0 < vc < n:
                        q = (grid[vr - 1][vc - 1], grid[vr - 1][vc], grid[vr][vc - 1], grid[vr][vc])
                        if min(q) >= 0 and not vok(*q):
                            ok = False
                            break
                grid[r][c] = -1
                if not ok:
                    continue
            out.append(b)
        return out

    def rec(filled):
        if filled == n * n:
            return True
        best = None
        for r in range(n):
            for c in range(n):
                if grid[r][c] >= 0:
                    continue
                if filled and not ((r > 0 and grid[r - 1][c] >= 0) or (c > 0 and grid[r][c - 1] >= 0)
                                   or (r < n - 1 and grid[r + 1][c] >= 0) or (c < n - 1 and grid[r][c + 1] >= 0)):
                    continue
                cs = cands(r, c)
                if best is None or len(cs) < len(best[2]):
                    best = (r, c, cs)
                    if not cs:
                        return False
        r, c, cs = best
        for b in cs:
            grid[r][c] = b
            if rec(filled + 1):
                return True
            grid[r][c] = -1
        return False

    return rec(0)


def max_completable_square(table, tile_filter=None, limit: int = 6, mrv: bool = False):
    """Largest n <= limit with a valid n x n FREE tiling, or AtLeast(limit).

    Sub-squares of a valid square are valid, so the scan stops at the first
    size with no tiling.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    allowed = _allowed_indices(table, tile_filter)
    if allowed is not None and not allowed:
        return 0
    if len(table) == 0:
        return 0
    for n in range(1, limit + 1):
        if not exists_square(table, n, allowed, mrv):
            return n - 1
    return AtLeast(limit)
