"""Epsilon-large index decomposition, tail bounds and the dimension bound chain.

For 0 < eps < delta <= 1 put c = 1/(delta - eps). Index j is eps-large when
|V_j| >= c * (|V_{j+1}| + ... + |V_n|); n is always large. The large indices
d_1 < ... < d_k = n cut the colors into blocks W_i, and the cumulative span
dimensions m_i obey

    m_i <= 2 m_{i-1} + (24/eps) (1 + c)^(d_i - d_{i-1} - 1),

which unrolls to B_rec = B_sum <= B_coarse = (24k/eps)(2/(2+eps))^k (1+c)^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .config import ColoredConfig, config_to_dict
from .exact import affine_dim, decimal_string, format_scalar, linear_dim
from .metrics import hypothesis_delta


class HypothesisError(ValueError):
    """The configuration does not satisfy the bound's hypothesis."""


def _check_sizes(sizes: Sequence[int]) -> None:
    if not sizes:
        raise ValueError("need at least one color class")
    if any(s < 1 for s in sizes):
        raise ValueError("class sizes must be positive")
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes {list(sizes)} are not nonincreasing")


def _check_eps(delta: Fraction, eps: Fraction) -> None:
    if delta > 1:
        raise ValueError(f"delta={delta} > 1 is outside the meaningful range")
    if not (0 < eps < delta):
        raise ValueError(f"eps={eps} not in (0, delta={delta})")


@dataclass(frozen=True)
class EpsilonDecomposition:
    delta: Fraction
    eps: Fraction
    c_eps: Fraction
    sizes: tuple[int, ...]
    large: tuple[bool, ...]  # large[j-1] for index j
    cuts: tuple[int, ...]  # d_0 = 0 < d_1 < ... < d_k = n

    @property
    def k(self) -> int:
        return len(self.cuts) - 1

    @property
    def large_indices(self) -> list[int]:
        return list(self.cuts[1:])

    def blocks(self) -> list[tuple[int, int]]:
        """(x, y) = (d_{i-1}, d_i) for each block W_i."""
        return list(zip(self.cuts, self.cuts[1:]))

    def gaps(self) -> list[int]:
        return [y - x for x, y in self.blocks()]


def classify_indices(sizes: Sequence[int], delta, eps) -> EpsilonDecomposition:
    delta, eps = Fraction(delta), Fraction(eps)
    _check_sizes(sizes)
    _check_eps(delta, eps)
    c = 1 / (delta - eps)
    n = len(sizes)
    large = []
    tail = 0
    for j in range(n - 1, -1, -1):
        large.append(j == n - 1 or sizes[j] >= c * tail)
        tail += sizes[j]
    large.reverse()
    cuts = (0,) + tuple(j + 1 for j in range(n) if large[j])
    return EpsilonDecomposition(delta, eps, c, tuple(sizes), tuple(large), cuts)


@dataclass
class TailReport:
    checks: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def verify_tail_bound(decomp: EpsilonDecomposition, sizes: Sequence[int] | None = None) -> TailReport:
    """Check the block tail bound and its corollary for every block.

    For block (x, y): sum_{j >= y-i} |V_j| <= 2 (1+c)^i |V_y| for
    0 <= i <= y-x-1, and |V_y| >= sum_{x<j<=y} |V_j| / (2 (1+c)^(y-x-1)).
    Indices are 1-based as in the definitions.
    """
    sizes = decomp.sizes if sizes is None else tuple(sizes)
    c = decomp.c_eps
    rep = TailReport()
    suffix = [0] * (len(sizes) + 2)
    for j in range(len(sizes), 0, -1):
        suffix[j] = suffix[j + 1] + sizes[j - 1]
    for x, y in decomp.blocks():
        # premise: y large, everything strictly between small
        if not decomp.large[y - 1] or any(decomp.large[j - 1] for j in range(x + 1, y)):
            continue
        vy = sizes[y - 1]
        for i in range(y - x):
            lhs = suffix[y - i]
            rhs = 2 * (1 + c) ** i * vy
            rep.checks.append({"kind": "tail", "x": x, "y": y, "i": i,
                               "lhs": format_scalar(lhs), "rhs": format_scalar(rhs),
                               "ok": lhs <= rhs})
        block_sum = suffix[x + 1] - suffix[y + 1]
        rhs = Fraction(block_sum) / (2 * (1 + c) ** (y - x - 1))
        rep.checks.append({"kind": "corollary", "x": x, "y": y,
                           "lhs": format_scalar(vy), "rhs": format_scalar(rhs),
                           "ok": vy >= rhs})
    return rep


def block_cut_params(decomp: EpsilonDecomposition) -> list[tuple[int, int, Fraction, Fraction]]:
    """(x, y, c1, c2) feeding each block W_i into the dimension lemma:
    c1 = 1/(2 (1+c_eps)^(gap-1)) from the tail corollary, c2 = eps."""
    c = decomp.c_eps
    return [(x, y, 1 / (2 * (1 + c) ** (y - x - 1)), decomp.eps) for x, y in decomp.blocks()]


# ------------------------------------------------------------- bound chain

def recursion_bounds(decomp: EpsilonDecomposition) -> list[Fraction]:
    """Upper bounds on m_0..m_k from running the recursion with m_0 = 0."""
    c, eps = decomp.c_eps, decomp.eps
    out = [Fraction(0)]
    for gap in decomp.gaps():
        out.append(2 * out[-1] + (24 / eps) * (1 + c) ** (gap - 1))
    return out


def summation_bound(decomp: EpsilonDecomposition, i: int | None = None) -> Fraction:
    c, eps = decomp.c_eps, decomp.eps
    gaps = decomp.gaps()
    i = decomp.k if i is None else i
    return (24 / eps) * sum((2 ** (i - j) * (1 + c) ** (gaps[j - 1] - 1)
                             for j in range(1, i + 1)), Fraction(0))


def coarse_bound(decomp: EpsilonDecomposition) -> Fraction:
    k, eps, n = decomp.k, decomp.eps, len(decomp.sizes)
    return (24 * k / eps) * (2 / (2 + eps)) ** k * (1 + decomp.c_eps) ** n


@dataclass
class BoundReport:
    decomp: EpsilonDecomposition
    block_dims: list[int]  # dim(W_i)
    m: list[int]  # measured m_0..m_k
    m_bounds: list[Fraction]
    b_rec: Fraction
    b_sum: Fraction
    b_coarse: Fraction
    dim: int
    adim: int
    verdicts: dict[str, bool]
    half_delta: dict | None = None
    witness: dict | None = None

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        def q(x):
            return {"exact": format_scalar(x), "decimal": decimal_string(x)}

        d = self.decomp
        return {
            "delta": format_scalar(d.delta),
            "eps": format_scalar(d.eps),
            "c_eps": format_scalar(d.c_eps),
            "large_indices": d.large_indices,
            "k": d.k,
            "block_dims": self.block_dims,
            "m": self.m,
            "m_bounds": [format_scalar(b) for b in self.m_bounds],
            "B_rec": q(self.b_rec),
            "B_sum": q(self.b_sum),
            "B_coarse": q(self.b_coarse),
            "dim": self.dim,
            "adim": self.adim,
            "theorem_shape": "adim(V) <= C/eps^2 * (1 + 1/(delta-eps))^n, C absolute (not materialized)",
            "verdicts": self.verdicts,
            "holds": self.holds,
            "eps_half_delta": self.half_delta,
            "witness": self.witness,
        }


def bound_chain(sizes: Sequence[int], delta, eps) -> tuple[EpsilonDecomposition, list[Fraction], Fraction, Fraction]:
    """(decomposition, recursion bounds, B_sum, B_coarse) for given sizes."""
    decomp = classify_indices(sizes, delta, eps)
    rec = recursion_bounds(decomp)
    return decomp, rec, summation_bound(decomp), coarse_bound(decomp)


def theorem_bound(config: ColoredConfig, delta, eps, half_delta: bool = True) -> BoundReport:
    """Measure dim(V), adim(V) and the block dimensions, and compare them with
    the explicit bound chain. ``delta`` must not exceed the measured delta."""
    delta, eps = Fraction(delta), Fraction(eps)
    measured = hypothesis_delta(config)
    if measured <= 0 or delta <= 0:
        raise HypothesisError("hypothesis empty: measured delta* is 0, no valid eps exists")
    if delta > measured:
        raise HypothesisError(f"delta={delta} exceeds measured delta*={measured}")
    decomp, rec, b_sum, b_coarse = bound_chain(config.sizes, delta, eps)
    off = config.offsets()
    pts = config.points()
    m = [0]
    block_dims = []
    for x, y in decomp.blocks():
        block_dims.append(linear_dim(pts[off[x]:off[y]]))
        m.append(linear_dim(pts[:off[y]]))
    dim, adim = m[-1], affine_dim(pts)
    b_rec = rec[-1]
    verdicts = {
        "adim_le_dim": adim <= dim,
        "dim_le_B_rec": dim <= b_rec,
        "B_rec_eq_B_sum": b_rec == b_sum,
        "B_sum_le_B_coarse": b_sum <= b_coarse,
        "m_i_le_m_prev_plus_block": all(m[i] <= m[i - 1] + block_dims[i - 1]
                                        for i in range(1, len(m))),
        "m_i_le_recursion": all(mi <= bi for mi, bi in zip(m, rec)),
    }
    rep = BoundReport(decomp, block_dims, m, rec, b_rec, b_sum, b_coarse, dim, adim, verdicts)
    if half_delta:
        half = delta / 2
        _, rec_h, sum_h, coarse_h = bound_chain(config.sizes, delta, half)
        rep.half_delta = {"eps": format_scalar(half), "B_rec": format_scalar(rec_h[-1]),
                        "B_sum": format_scalar(sum_h), "B_coarse": format_scalar(coarse_h),
                        "dim_le_B_rec": dim <= rec_h[-1]}
    if not rep.holds:
        rep.witness = {"config": config_to_dict(config), "delta": format_scalar(delta),
                       "eps": format_scalar(eps),
                       "failed": [k for k, v in verdicts.items() if not v]}
    return rep


def epsilon_grid(delta, grid: int) -> list[Fraction]:
    """delta*g/(grid+1) for g = 1..grid, plus delta/2, ascending."""
    delta = Fraction(delta)
    if grid < 1:
        raise ValueError("grid must be >= 1")
    pts = {delta * g / (grid + 1) for g in range(1, grid + 1)}
    pts.add(delta / 2)
    return sorted(pts)


def best_epsilon(sizes: Sequence[int], delta, grid: int) -> tuple[Fraction, Fraction]:
    """(eps*, B_rec) over the grid; B_rec only depends on sizes, delta and eps.
    Ties go to the smaller eps."""
    best = None
    for eps in epsilon_grid(delta, grid):
        b_rec = recursion_bounds(classify_indices(sizes, delta, eps))[-1]
        if best is None or b_rec < best[1]:
            best = (eps, b_rec)
    return best


def optimize_epsilon(config: ColoredConfig, delta, grid: int) -> tuple[Fraction, BoundReport]:
    """Grid point minimizing B_rec (ties to the smaller eps)."""
    if hypothesis_delta(config) <= 0 or Fraction(delta) <= 0:
        raise HypothesisError("hypothesis empty: measured delta* is 0, no valid eps exists")
    eps, _ = best_epsilon(config.sizes, delta, grid)
    rep = theorem_bound(config, delta, eps, half_delta=False)
    half = theorem_bound(config, delta, Fraction(delta) / 2, half_delta=False)
    rep.half_delta = {"eps": format_scalar(Fraction(delta) / 2), "B_rec": format_scalar(half.b_rec),
                    "B_sum": format_scalar(half.b_sum), "B_coarse": format_scalar(half.b_coarse),
                    "dim_le_B_rec": half.dim <= half.b_rec}
    return eps, rep


# ---------------------------------------------------------- coarse constants

def coarse_objective(k: int, eps) -> Fraction:
    """(24k/eps) (2/(2+eps))^k."""
    eps = Fraction(eps)
    return (24 * k / eps) * (2 / (2 + eps)) ** k


@dataclass
class CoarseReport:
    eps: Fraction
    k_star: float  # the only floating value in the package
    bracket: tuple[int, int]
    values: dict[int, Fraction]
    maximum: Fraction
    argmax: int
    scan_ok: bool
    unimodal: bool
    chain: dict | None = None

    def to_dict(self) -> dict:
        return {
            "eps": format_scalar(self.eps),
            "k_star_float": self.k_star,
            "k_star_note": "floating approximation of -1/ln(2/(2+eps)); verdicts use the exact bracket",
            "bracket": list(self.bracket),
            "values": {str(k): format_scalar(v) for k, v in self.values.items()},
            "maximum": format_scalar(self.maximum),
            "argmax": self.argmax,
            "scan_ok": self.scan_ok,
            "unimodal": self.unimodal,
            "chain": self.chain,
        }


def coarse_constants(eps, delta=None) -> CoarseReport:
    """Locate the integer maximizer of (24k/eps)(2/(2+eps))^k.

    The real maximizer -1/ln(2/(2+eps)) is computed in floating point only to
    find the bracket; both neighbors are evaluated exactly and the whole range
    1..3k* is scanned to confirm the bracket maximum dominates.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError(f"eps={eps} not in (0, 1)")
    k_star = -1 / math.log(2 / (2 + float(eps)))
    lo, hi = max(1, math.floor(k_star)), max(1, math.ceil(k_star))
    values = {k: coarse_objective(k, eps) for k in sorted({lo, hi})}
    argmax = max(values, key=lambda k: (values[k], -k))
    maximum = values[argmax]
    top = max(3, math.ceil(3 * k_star))
    seq = [coarse_objective(k, eps) for k in range(1, top + 1)]
    scan_ok = all(v <= maximum for v in seq)
    # nondecreasing up to the bracket, nonincreasing after it
    unimodal = (all(a <= b for a, b in zip(seq[:lo], seq[1:lo]))
                and all(a >= b for a, b in zip(seq[hi - 1:], seq[hi:])))
    chain = None
    if delta is not None:
        delta = Fraction(delta)
        _check_eps(delta, eps)
        c = 1 / (delta - eps)
        chain = {
            "c_eps": format_scalar(c),
            "c_gt_1_over_1_minus_eps": c > 1 / (1 - eps) or (delta == 1 and c == 1 / (1 - eps)),
            "c_gt_1_plus_eps": c > 1 + eps,
            "ratio_lt": 2 / (1 + c) < 2 / (2 + eps),
        }
    return CoarseReport(eps, k_star, (lo, hi), values, maximum, argmax, scan_ok, unimodal, chain)
