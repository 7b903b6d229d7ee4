"""
From eps-large indices to a dimension bound
===========================================

Index j is eps-large when |V_j| >= c (|V_{j+1}| + ... + |V_n|) with
c = 1/(delta - eps); the last index always is. The large indices cut the
colors into blocks, and a recursion over the blocks bounds dim(V).
"""

from fractions import Fraction

import numpy as np

from mrlab import classify_indices, coarse_constants, optimize_epsilon, theorem_bound, verify_tail_bound
from mrlab.bounds import best_epsilon, bound_chain, coarse_objective
from mrlab.generators import gen_collinear

d = classify_indices((8, 4, 2, 1), Fraction(3, 4), Fraction(1, 4))
print("large indices", d.large_indices, "blocks", d.blocks())
for c in verify_tail_bound(d).checks:
    print("  ", c)

decomp, rec, b_sum, b_coarse = bound_chain((5, 1), 1, Fraction(1, 2))
print("recursion", [str(v) for v in rec], "sum", b_sum, "coarse", b_coarse)

eps_star, b = best_epsilon((8, 4, 2, 1), Fraction(3, 4), 16)
print("best eps on 16-point grid:", eps_star, "B_rec", b)

cfg = gen_collinear(4, [5, 5, 4, 4])
delta = Fraction(3, 4)
rep = theorem_bound(cfg, delta, delta / 2)
print("dim", rep.dim, "<= B_rec", rep.b_rec, "<= B_coarse", float(rep.b_coarse))
eps, rep = optimize_epsilon(cfg, delta, 16)
print("optimized eps", eps, "B_rec", rep.b_rec)

# The closed form peaks near k* = -1/ln(2/(2+eps))
cr = coarse_constants(Fraction(1, 2))
print("k* ~", round(cr.k_star, 3), "bracket", cr.bracket, "max", cr.maximum)
ks = np.arange(1, 13)
vals = np.array([float(coarse_objective(int(k), Fraction(1, 2))) for k in ks])
print(np.round(vals, 2))
