"""Write a 17x17 crop of a substitution patch as SVG, with class-6 lines highlighted."""
import sys
from pathlib import Path

from tilelab import shipped_coarse, shipped_rules
from tilelab.render import RenderStyle, render_svg
from tilelab.substitution import generate_plane_patch

out = Path(sys.argv[1] if len(sys.argv) > 1 else "patch17.svg")
cts = shipped_coarse()
g = generate_plane_patch("3x3a", 2, shipped_rules(cts), cts).crop(0, 0, 17, 17)
out.write_text(render_svg(g, RenderStyle(cell=32, show_lines=6, show_corners=True)), encoding="utf-8")
print(f"wrote {out} ({g.width}x{g.height})")
