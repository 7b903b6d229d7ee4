"""
The collinearity matrix of a cut
================================

Cut the color classes into P1 = V_1..V_x, P2 = V_{x+1}..V_y and the rest P3.
Every line through a P2 point with at least three points of P1 u P2 gives
rows h1 t1 + h2 t2 + h3 t3 = 0, one per triple. Stacking them gives A with
A.M = 0, and the rank of the P2 block bounds dim(P2) by dim(P1) plus a slack.
"""

from fractions import Fraction

from mrlab import assemble, audit_claim, hypothesis_delta, restrict_partition, verify_lemma31
from mrlab.bounds import block_cut_params, classify_indices
from mrlab.config import make_config

cfg = make_config([
    [(0, 0, 0), (2, 0, 0), (0, 1, 1), (0, 1, 3)],
    [(1, 0, 0), (3, 0, 0), (0, 1, 2), (0, 1, 4)],
])
delta = hypothesis_delta(cfg)
print("two skew lines, delta* =", delta)

part = restrict_partition(cfg, 1, 2)
asm = assemble(cfg, part)
print("A is", asm.A.shape, "with", len(asm.lines), "extraordinary lines")
print("A.M = 0:", (asm.A @ asm.M).is_zero(), "  A3 = 0:", asm.a_block(3).is_zero())

claim = audit_claim(asm, 1, delta)
print("claim:", claim.status, (claim.params.q, claim.params.k, claim.params.t),
      "needs k >=", claim.required_k)

rep = verify_lemma31(cfg, part, 1, delta)
for key in ("rank_A2", "rank_A2M2", "rank_A1M1", "dim_P1", "dim_P2", "slack_12_over_c1c2"):
    print(f"  {key:<20} {rep.values[key]}")

# Constants as used block by block at eps = delta/2
decomp = classify_indices(cfg.sizes, delta, delta / 2)
for x, y, c1, c2 in block_cut_params(decomp):
    r = verify_lemma31(cfg, restrict_partition(cfg, x, y), c1, c2, delta)
    print(f"block ({x},{y}) c1={c1} c2={c2}: {r.status}")

# Violated hypotheses are reported, not asserted
print(audit_claim(asm, Fraction(10), delta).status)
