"""Deterministic SVG rendering of tilings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional
from xml.sax.saxutils import escape

from .engine import GridTiling, line_classes
from .model import E, N, NE, NW, S, SE, SW, W, corner_of, edge_of

DEFAULT_FILLS = ("#4a78c2", "#c2463f", "#4f9a4a", "#c9a23a", "#8a5cb8", "#3a9fa8")


@dataclass(frozen=True)
class RenderStyle:
    cell: float = 40.0
    fills: dict = field(default_factory=dict)  # prototype name -> fill
    edge_colors: tuple[str, str] = ("#e8d7b0", "#7a4a21")  # beige, brown
    stroke_per_unit: float = 0.9
    show_corners: bool = False
    show_lines: Optional[int] = None  # overlay the lines of this class (6 or 8)
    show_zones: bool = False
    overlay_color: str = "#1f5fff"

    def fill_for(self, name: str, pid: int) -> str:
        if name in self.fills:
            return self.fills[name]
        return DEFAULT_FILLS[pid % len(DEFAULT_FILLS)]

    def check(self, ts) -> None:
        if self.cell <= 0 or self.stroke_per_unit <= 0:
            raise ValueError("cell size and stroke scale must be positive")
        unknown = set(self.fills) - {p.name for p in ts.prototypes}
        if unknown:
            raise ValueError(f"palette names unknown tiles: {sorted(unknown)}")


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return s if s != "-0" else "0"


def render_svg(t: GridTiling, style: Optional[RenderStyle] = None) -> str:
    """One <g class="tile"> per cell with its square and four edge strokes."""
    style = style or RenderStyle()
    if not t.complete:
        raise ValueError("render_svg needs a complete tiling")
    ts = t.tileset
    style.check(ts)
    s = style.cell
    W_, H_ = t.width * s, t.height * s
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(W_)}" height="{_num(H_)}" '
        f'viewBox="0 0 {_num(W_)} {_num(H_)}">',
        f'<title>{escape(ts.name)} {t.width}x{t.height}</title>',
    ]
    inset = s * 0.08
    for r in range(t.height):
        for c in range(t.width):
            o = t.at(r, c)
            p = ts.proto(o.proto)
            x0, y0 = c * s, r * s
            out.append(f'<g class="tile" data-tile="{o.token}" data-name="{escape(p.name)}">')
            out.append(f'<rect x="{_num(x0)}" y="{_num(y0)}" width="{_num(s)}" height="{_num(s)}" '
                       f'fill="{style.fill_for(p.name, p.id)}"/>')
            ends = {
                N: (x0 + inset, y0 + inset, x0 + s - inset, y0 + inset),
                E: (x0 + s - inset, y0 + inset, x0 + s - inset, y0 + s - inset),
                S: (x0 + s - inset, y0 + s - inset, x0 + inset, y0 + s - inset),
                W: (x0 + inset, y0 + s - inset, x0 + inset, y0 + inset),
            }
            for d in (N, E, S, W):
                e = edge_of(o, d, ts)
                x1, y1, x2, y2 = ends[d]
                width = max(e.thickness, 0.5) * style.stroke_per_unit
                out.append(f'<line class="edge" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                           f'stroke="{style.edge_colors[e.color]}" stroke-width="{_num(width)}"/>')
            if style.show_corners:
                pos = {NE: (x0 + s * 0.78, y0 + s * 0.3), SE: (x0 + s * 0.78, y0 + s * 0.82),
                       SW: (x0 + s * 0.22, y0 + s * 0.82), NW: (x0 + s * 0.22, y0 + s * 0.3)}
                for k in (NE, SE, SW, NW):
                    x, y = pos[k]
                    out.append(f'<text x="{_num(x)}" y="{_num(y)}" font-size="{_num(s * 0.22)}" '
                               f'text-anchor="middle">{corner_of(o, k, ts)}</text>')
            out.append('</g>')
    overlay = []
    if style.show_lines is not None:
        overlay.extend(_lines(t, style.show_lines, s))
    if style.show_zones and style.show_lines != 6:
        overlay.extend(_lines(t, 6, s))
    for x1, y1, x2, y2 in overlay:
        out.append(f'<line class="overlay" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                   f'stroke="{style.overlay_color}" stroke-width="{_num(s * 0.06)}" stroke-opacity="0.8"/>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def _lines(t: GridTiling, cls: int, s: float):
    for i, k in enumerate(line_classes(t, "x"), 1):
        if k == cls:
            yield (i * s, 0, i * s, t.height * s)
    for i, k in enumerate(line_classes(t, "y"), 1):
        if k == cls:
            yield (0, i * s, t.width * s, i * s)
