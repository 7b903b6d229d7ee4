"""
Triple systems from idempotent Latin squares
============================================

For r >= 3 we want r^2 - r ordered triples over [r] with distinct entries,
each element in exactly 3(r-1) of them and each pair in at most 6.
"""

import numpy as np

from mrlab import audit_design, build_triples, rank_bound_thm22, verify_triples
from mrlab.designs import idempotent_latin_square
from mrlab.exact import SparseExactMatrix, exact_rank

print(np.array(idempotent_latin_square(5)))
print(np.array(idempotent_latin_square(6)))  # even order: prolonged from 5

for r in (3, 4, 7, 12, 25):
    ts = build_triples(r)
    ok, bad = verify_triples(ts)
    print(f"r={r:>2}: {len(ts.triples):>3} triples  ok={ok}")

# A design matrix: one row per triple, nonzeros at the three positions.
rng = np.random.default_rng(0)
ts = build_triples(8)
entries = {}
for row, t in enumerate(ts.triples):
    for a in t:
        entries[(row, a - 1)] = int(rng.integers(1, 9)) * (1 if rng.random() < 0.5 else -1)
A = SparseExactMatrix(len(ts.triples), 8, entries)
params = audit_design(A)
print("(q, k, t) =", (params.q, params.k, params.t))
print("rank", exact_rank(A), ">= certified", rank_bound_thm22(A.ncols, params))
