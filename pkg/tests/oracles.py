"""Slow, independent reference computations used to check the package.

None of these import the code paths they check: collinearity is tested with
2x2 minors of difference vectors, rank by cofactor expansion.
"""

from fractions import Fraction
from itertools import combinations, permutations


def collinear(p, q, r) -> bool:
    """All 2x2 minors of [q - p; r - p] vanish."""
    u = [b - a for a, b in zip(p, q)]
    v = [b - a for a, b in zip(p, r)]
    return all(u[i] * v[j] - u[j] * v[i] == 0 for i, j in combinations(range(len(u)), 2))


def det(mat):
    """Cofactor expansion along the first row."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        total += (-1) ** j * mat[0][j] * det(minor)
    return total


def minor_rank(mat) -> int:
    """Largest r with a nonzero r x r minor."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    for r in range(min(m, n), 0, -1):
        for rows in combinations(range(m), r):
            for cols in combinations(range(n), r):
                if det([[mat[i][j] for j in cols] for i in rows]) != 0:
                    return r
    return 0


def lines_brute_force(points):
    """Maximal collinear subsets (as frozensets of indices) spanned by pairs."""
    out = set()
    for a, b in combinations(range(len(points)), 2):
        out.add(frozenset(i for i in range(len(points))
                          if i in (a, b) or collinear(points[a], points[b], points[i])))
    return out


def delta_brute_force(colors, singleton_vacuous=True):
    """O(m^3) loop straight from the definition."""
    pts = [(c, p) for c, cls in enumerate(colors) for p in cls]
    worst = []
    for c, cls in enumerate(colors):
        if len(cls) < 2 and singleton_vacuous:
            continue
        for v in cls:
            cnt = 0
            for u in cls:
                if u == v:
                    continue
                if any(c2 != c and collinear(v, u, w) for c2, w in pts):
                    cnt += 1
            worst.append(Fraction(cnt, len(cls)))
    return min(worst) if worst else Fraction(0)


def triple_properties(r, triples):
    """Independent property check returning a dict of booleans."""
    elem = {a: 0 for a in range(1, r + 1)}
    pair = {}
    in_range = all(len(t) == 3 and all(1 <= a <= r for a in t) for t in triples)
    distinct = all(len(set(t)) == 3 for t in triples)
    if in_range:
        for t in triples:
            for a in set(t):
                elem[a] += 1
            for a in t:
                for b in t:
                    if a < b:
                        pair[(a, b)] = pair.get((a, b), 0) + 1
    return {
        "count": len(triples) == r * r - r,
        "range": in_range,
        "distinct": distinct,
        "element": in_range and all(v == 3 * (r - 1) for v in elem.values()),
        "pair": in_range and all(v <= 6 for v in pair.values()),
    }


def all_perms3():
    return [tuple(p) for p in permutations((1, 2, 3))]
