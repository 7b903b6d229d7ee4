"""Triple systems and design-matrix audits.

A triple system over [r] is a list of r^2 - r ordered triples with distinct
entries, each element in exactly 3(r-1) triples and each pair in at most 6.
We build them from an idempotent Latin square L (L[i][i] = i): the triples
(i, j, L[i][j]) for i != j have all three properties.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .exact import SparseExactMatrix


@dataclass(frozen=True)
class TripleSystem:
    r: int
    triples: tuple[tuple[int, int, int], ...]  # 1-based elements

    def to_json(self) -> str:
        return json.dumps({"r": self.r, "triples": [list(t) for t in self.triples]})

    @classmethod
    def from_json(cls, text: str) -> "TripleSystem":
        data = json.loads(text)
        return cls(r=int(data["r"]), triples=tuple(tuple(t) for t in data["triples"]))


@dataclass(frozen=True)
class TripleViolation:
    prop: str  # "count", "distinct", "range", "element", "pair"
    witness: tuple
    detail: str


def idempotent_latin_square(r: int) -> list[list[int]]:
    """0-based Latin square of order r != 2 with L[i][i] = i.

    Odd r: L[i][j] = (i + j)/2 mod r. Even r: prolong the odd square of
    order r-1 along its off-diagonal transversal {(i, i+1)}.
    """
    if r < 1 or r == 2:
        raise ValueError(f"no idempotent Latin square of order {r}")
    if r % 2 == 1:
        half = (r + 1) // 2  # inverse of 2 mod r
        return [[(i + j) * half % r for j in range(r)] for i in range(r)]
    n = r - 1
    base = idempotent_latin_square(n)
    sq = [row + [0] for row in base] + [[0] * r]
    for i in range(n):
        j = (i + 1) % n
        sym = base[i][j]
        sq[i][j] = n
        sq[i][n] = sym
        sq[n][j] = sym
    sq[n][n] = n
    return sq


@lru_cache(maxsize=None)
def build_triples(r: int) -> TripleSystem:
    """Triple system over [r]; cached per r."""
    if r < 3:
        raise ValueError(f"triple systems need r >= 3, got {r}")
    sq = idempotent_latin_square(r)
    triples = tuple((i + 1, j + 1, sq[i][j] + 1)
                    for i in range(r) for j in range(r) if i != j)
    ts = TripleSystem(r=r, triples=triples)
    ok, bad = verify_triples(ts)
    if not ok:  # pragma: no cover - construction is proven, this is the gate
        raise AssertionError(f"triple construction failed for r={r}: {bad}")
    return ts


def verify_triples(ts: TripleSystem) -> tuple[bool, TripleViolation | None]:
    """Check all properties; return the first violation found."""
    r = ts.r
    if len(ts.triples) != r * r - r:
        return False, TripleViolation("count", (len(ts.triples),),
                                      f"{len(ts.triples)} triples, expected {r * r - r}")
    elem: Counter = Counter()
    pair: Counter = Counter()
    for t in ts.triples:
        if len(t) != 3 or any(not (1 <= a <= r) for a in t):
            return False, TripleViolation("range", tuple(t), f"triple {t} not in [{r}]^3")
        if len(set(t)) != 3:
            return False, TripleViolation("distinct", tuple(t), f"triple {t} repeats an element")
        for a in t:
            elem[a] += 1
        for a, b in combinations(sorted(t), 2):
            pair[(a, b)] += 1
    for a in range(1, r + 1):
        if elem[a] != 3 * (r - 1):
            return False, TripleViolation("element", (a,),
                                          f"element {a} in {elem[a]} triples, expected {3 * (r - 1)}")
    for p, cnt in sorted(pair.items()):
        if cnt > 6:
            return False, TripleViolation("pair", p, f"pair {p} in {cnt} triples (> 6)")
    return True, None


# ------------------------------------------------------------ design audit

@dataclass(frozen=True)
class DesignParams:
    q: int  # max row support
    k: int  # min column support
    t: int  # max pairwise column-support intersection

    def is_design(self, q: int, k, t: int) -> bool:
        return self.q <= q and self.k >= k and self.t <= t


def audit_design(mat: SparseExactMatrix) -> DesignParams:
    rows = mat.row_supports()
    q = max((len(s) for s in rows), default=0)
    col_count = Counter(j for s in rows for j in s)
    k = min((col_count[j] for j in range(mat.ncols)), default=0)
    inter: Counter = Counter()
    for s in rows:
        for a, b in combinations(sorted(s), 2):
            inter[(a, b)] += 1
    t = max(inter.values(), default=0)
    return DesignParams(q=q, k=k, t=t)


def rank_bound_thm22(n: int, params: DesignParams) -> Fraction:
    """n - n t q (q-1) / k: lower bound on the rank of a (q, k, t) design matrix."""
    if params.k <= 0:
        raise ValueError("rank bound needs k >= 1 (some column is empty)")
    return n - Fraction(n * params.t * params.q * (params.q - 1), params.k)
