"""
Exact rank versus floating point
================================

Rank over Q is computed with fraction-free elimination, so the answer is
never a tolerance call. Floating rank gets Hilbert-type matrices wrong once
they are moderately sized.
"""

from fractions import Fraction

import numpy as np

from mrlab import GaussianRational, SparseExactMatrix, exact_rank, linear_dim, affine_dim

# Hilbert matrices are nonsingular at every size
for n in (6, 10, 14, 18):
    H = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    exact = exact_rank(SparseExactMatrix.from_dense(H))
    floating = np.linalg.matrix_rank(np.array(H, dtype=float))
    print(f"hilbert {n:>2}: exact rank {exact:>2}   numpy rank {floating:>2}")

# Over Q(i) rank is taken directly in the field, no realification.
i = GaussianRational(0, 1)
rows = [[1, i, 2], [i, -1, 2 * i], [0, 1, 1]]  # row 2 = i * row 1
print("gaussian rank:", exact_rank(SparseExactMatrix.from_dense(rows)))

# Span dimensions of a point set: linear span vs affine hull.
pts = [(1, 0, 0), (0, 1, 0), (Fraction(1, 2), Fraction(1, 2), 0)]
print("linear dim", linear_dim(pts), "affine dim", affine_dim(pts))

# Matrices travel in a plain sparse text format.
m = SparseExactMatrix.from_dense([[Fraction(1, 2), 0], [0, i]])
print(m.to_text())
