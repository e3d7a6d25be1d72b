"""From three decorated squares to a growing substitution patch."""
from tilelab import shipped_coarse, shipped_rules, shipped_tileset
from tilelab.engine import TileTable, line_classes
from tilelab.search import SearchConfig, enumerate_tilings
from tilelab.substitution import CoarseTable, generate_plane_patch, line_sequence
from tilelab.zones import corner_redundancy_check, decompose, discover_supertiles

ts = shipped_tileset()
table = TileTable(ts)
print(f"{len(ts.prototypes)} prototypes, {len(ts.orientations())} distinct orientations")

pairs = enumerate_tilings(SearchConfig(2, 1), ts).tilings
sums = [line_classes(g, "x")[0] for g in pairs]
print(f"1x2 tilings: {len(pairs)} ({sums.count(6)} with seam sum 6, {sums.count(8)} with sum 8)")

sts = discover_supertiles(ts, 3, 3, 1, table)
print("supertiles:", ", ".join(f"{s.width}x{s.height}" for s in sts))

rep = corner_redundancy_check(ts, "crossing", 6, table)
print(f"corner check: {rep.count} counterexamples among {rep.examined} crossing vertices")

cts = shipped_coarse()
rules = shipped_rules(cts)
ctable = CoarseTable(cts)
for k in range(3):
    g = generate_plane_patch("3x3a", k, rules, cts, ctable)
    z = decompose(g)
    print(f"k={k}: {g.width}x{g.height} base cells, {len(z.row_heights)}x{len(z.column_widths)} zones, "
          f"row word {line_sequence(g, 'y')[:40]}")
