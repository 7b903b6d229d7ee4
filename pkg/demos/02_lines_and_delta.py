"""
Lines through a colored configuration and its delta
===================================================

For each point v of color i, c(v) counts same-colored points u for which the
line vu carries a point of some other color. delta* is the minimum of
c(v)/|V_i| over all points.
"""

import numpy as np

from mrlab import compute_delta, enumerate_lines, is_mr_configuration, make_config
from mrlab.config import format_line
from mrlab.generators import gen_collinear, gen_grid

grid = gen_grid(3, "parity")
lines = enumerate_lines(grid)
sizes = np.bincount([len(ln) for ln in lines])
print("3x3 grid:", {k: int(v) for k, v in enumerate(sizes) if v}, "lines by size")
print("a 3-point line:", format_line(next(ln for ln in lines if len(ln) == 3)))

prof = compute_delta(grid)
print("parity coloring delta* =", prof.delta)
print("fractions per point:", [str(f) for f in prof.fractions])

# All points on one line: each point sees every same-colored partner
cfg = gen_collinear(2, [3, 3])
print("collinear (3,3) delta* =", compute_delta(cfg).delta)
print("two-color MR configuration:", is_mr_configuration(cfg)[0])

# A singleton class is vacuous by default; the strict reading counts it.
lone = make_config([[(0, 0), (2, 0)], [(1, 0)]])
p = compute_delta(lone)
print("singleton class: lenient", p.delta, " strict", p.delta_strict)

# Triangle with an interior point: every edge is monochromatic
tri = make_config([[(0, 0), (4, 0), (0, 4)], [(1, 1)]])
ok, witness = is_mr_configuration(tri)
print("triangle + center is MR:", ok, "witness", format_line(witness))
