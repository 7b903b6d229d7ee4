"""
Searching for high-dimensional configurations
=============================================

Seeded hill climbing on a grid: relocate, recolor, add or remove a point and
keep the move when (min(delta*, target), coverage, dim, dim/B_rec) improves.
Every archived record can be replayed and re-verified.
"""

from fractions import Fraction

import numpy as np

from mrlab import SearchParams, search, verify_archive

params = SearchParams(n=2, side=6, budget=12, iterations=3000, seed=7, streams=4)
archive = search(params)
print(len(archive), "records; re-verified:", not verify_archive(archive))

dims = np.array([r["dim"] for r in archive])
deltas = np.array([float(Fraction(r["delta"])) for r in archive])
print("dims seen:", np.unique(dims))
print("best delta*:", deltas.max())

good = [r for r in archive if r["bound_rec"] is not None]
for r in good[-3:]:
    print(f"stream {r['stream']} iter {r['iter']:>4}: delta {r['delta']:>5} dim {r['dim']} "
          f"B_rec {r['bound_rec']} poly ratios {r['ratio_poly']}")

# the merged archive does not depend on the worker count
assert search(params, workers=2) == archive
