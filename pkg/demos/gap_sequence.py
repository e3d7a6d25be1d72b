"""Gap words under the 1-D morphism: growth, letter ratio and periodicity."""
from math import sqrt

from tilelab.substitution import iterate_1d, smallest_period

for k in range(7):
    w = iterate_1d("S", k)
    ratio = w.count("D") / max(1, w.count("S"))
    per = smallest_period(w, min(64, len(w) - 1)) if len(w) > 1 else None
    print(f"k={k} length {len(w):6d}  D/S {ratio:.6f}  period<=64: {per}")
print(f"limit D/S = {sqrt(2) / 2:.6f}")
print("bits:", iterate_1d("S", 3).bits()[:80])
