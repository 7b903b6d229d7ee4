"""Fixture generators and a seeded hill-climbing search for configurations
with large span dimension at a given delta.

Randomness comes from SplitMix64 so every run is reproducible from its seed:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
    out <- z ^ (z >> 31)

``below(n)`` uses rejection sampling so results are unbiased and identical
on every platform.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import bound_chain
from .config import ColoredConfig, config_to_dict, load_config, make_config
from .exact import format_scalar, linear_dim
from .metrics import compute_delta

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next()
            if v < limit:
                return v % n


# ---------------------------------------------------------------- fixtures

def gen_collinear(n: int, sizes: Sequence[int]) -> ColoredConfig:
    """sum(sizes) points (j, 0), colors dealt round-robin among classes with room left."""
    sizes = list(sizes)
    if len(sizes) != n or n < 1:
        raise ValueError(f"need {n} sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes) or any(a < b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes {sizes} must be positive and nonincreasing")
    if sum(sizes) < 2:
        raise ValueError("need at least two points")
    left = sizes[:]
    colors: list[list] = [[] for _ in range(n)]
    x, c = 0, 0
    while any(left):
        if left[c]:
            colors[c].append((x, 0))
            left[c] -= 1
            x += 1
        c = (c + 1) % n
    return make_config(colors)


GRID_COLORINGS = ("rows", "parity", "blocks")


def gen_grid(side: int, coloring: str = "rows") -> ColoredConfig:
    """The side x side integer grid; ``rows`` colors by y, ``parity`` by
    (x + y) mod 2, ``blocks`` by quadrant."""
    if side < 2:
        raise ValueError("side must be >= 2")
    if coloring not in GRID_COLORINGS:
        raise ValueError(f"unknown coloring {coloring!r}; choose from {GRID_COLORINGS}")
    half = (side + 1) // 2
    groups: dict[int, list] = {}
    for y in range(side):
        for x in range(side):
            if coloring == "rows":
                c = y
            elif coloring == "parity":
                c = (x + y) % 2
            else:
                c = 2 * (y // half) + (x // half)
            groups.setdefault(c, []).append((x, y))
    return make_config([groups[c] for c in sorted(groups)])


# ------------------------------------------------------------------ search

@dataclass(frozen=True)
class SearchParams:
    n: int = 2
    side: int = 6
    budget: int = 12
    iterations: int = 1000
    seed: int = 0
    dim: int = 3
    target: Fraction = Fraction(1, 4)
    streams: int = 4
    patience: int = 500

    def validate(self) -> None:
        for name in ("n", "side", "budget", "dim", "streams", "patience"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.budget < self.n:
            raise ValueError(f"budget {self.budget} < n {self.n}: infeasible")
        if self.budget > self.side ** self.dim:
            raise ValueError("budget exceeds the number of grid cells")
        if not (0 < self.target <= 1):
            raise ValueError("target delta must be in (0, 1]")


def evaluate(config: ColoredConfig, target: Fraction = Fraction(1, 4)) -> dict:
    """Metrics recorded for every archived configuration.

    B_rec is taken at eps = delta*/2 with the measured delta*; it is None when
    delta* = 0 (no admissible eps). ``coverage`` sums the per-point fractions
    c(v)/|V_i| capped at ``target``: it rises before delta* itself can move.
    """
    profile = compute_delta(config, singleton_vacuous=False)
    delta = profile.delta_strict
    dim = linear_dim(config.points())
    coverage = sum((min(f, target) for f in profile.fractions), Fraction(0))
    out = {"delta": delta, "dim": dim, "coverage": coverage, "bound_rec": None, "eps": None,
           "ratio_bound": None, "ratio_poly": None}
    if delta > 0:
        eps = delta / 2
        _, rec, _, _ = bound_chain(config.sizes, delta, eps)
        out["eps"] = eps
        out["bound_rec"] = rec[-1]
        out["ratio_bound"] = Fraction(dim) / rec[-1]
        base = Fraction(config.n) / delta
        out["ratio_poly"] = {str(p): Fraction(dim) / base ** p for p in (1, 2, 3)}
    return out


def _objective(metrics: dict, target: Fraction) -> tuple:
    return (min(metrics["delta"], target), metrics["coverage"], metrics["dim"],
            metrics["ratio_bound"] or Fraction(0))


def _record(stream: int, seed: int, it: int, config: ColoredConfig, metrics: dict,
            target: Fraction) -> dict:
    def s(v):
        return None if v is None else format_scalar(v)

    return {
        "stream": stream,
        "seed": seed,
        "target": format_scalar(target),
        "iter": it,
        "config": config_to_dict(config),
        "delta": s(metrics["delta"]),
        "dim": metrics["dim"],
        "coverage": s(metrics["coverage"]),
        "eps": s(metrics["eps"]),
        "bound_rec": s(metrics["bound_rec"]),
        "ratio_bound": s(metrics["ratio_bound"]),
        "ratio_poly": None if metrics["ratio_poly"] is None
        else {k: s(v) for k, v in metrics["ratio_poly"].items()},
    }


def _random_cell(rng: SplitMix64, side: int, dim: int) -> tuple[int, ...]:
    return tuple(rng.below(side) for _ in range(dim))


def _random_state(rng: SplitMix64, p: SearchParams) -> list[list[tuple]]:
    """Budget points in distinct cells; each color gets at least one."""
    cells: set[tuple] = set()
    while len(cells) < p.budget:
        cells.add(_random_cell(rng, p.side, p.dim))
    ordered = sorted(cells)
    # shuffle deterministically
    for i in range(len(ordered) - 1, 0, -1):
        j = rng.below(i + 1)
        ordered[i], ordered[j] = ordered[j], ordered[i]
    colors: list[list[tuple]] = [[] for _ in range(p.n)]
    for i, cell in enumerate(ordered):
        c = i if i < p.n else rng.below(p.n)
        colors[c].append(cell)
    return colors


def _mutate(rng: SplitMix64, colors: list[list[tuple]], p: SearchParams) -> list[list[tuple]] | None:
    """One random move; None when the move would be degenerate."""
    new = [list(c) for c in colors]
    occupied = {pt for c in new for pt in c}
    total = len(occupied)
    move = rng.below(4)
    if move == 0:  # relocate
        c = rng.below(p.n)
        k = rng.below(len(new[c]))
        cell = _random_cell(rng, p.side, p.dim)
        if cell in occupied:
            return None
        new[c][k] = cell
    elif move == 1:  # swap colors of two points
        a, b = rng.below(p.n), rng.below(p.n)
        if a == b:
            return None
        i, j = rng.below(len(new[a])), rng.below(len(new[b]))
        new[a][i], new[b][j] = new[b][j], new[a][i]
    elif move == 2:  # add
        if total >= p.budget:
            return None
        cell = _random_cell(rng, p.side, p.dim)
        if cell in occupied:
            return None
        new[rng.below(p.n)].append(cell)
    else:  # remove
        c = rng.below(p.n)
        if len(new[c]) <= 1:
            return None
        del new[c][rng.below(len(new[c]))]
    return new


def _run_stream(args: tuple[SearchParams, int, int]) -> list[dict]:
    p, stream, iterations = args
    seed = (p.seed + stream) & MASK64
    rng = SplitMix64(seed)
    colors = _random_state(rng, p)
    config = make_config(colors)
    metrics = evaluate(config, p.target)
    cur_obj = best_obj = _objective(metrics, p.target)
    archive = [_record(stream, seed, 0, config, metrics, p.target)]
    stale = 0
    for it in range(1, iterations + 1):
        if stale >= p.patience:
            colors = _random_state(rng, p)
            cur_obj = _objective(evaluate(make_config(colors), p.target), p.target)
            stale = 0
        cand = _mutate(rng, colors, p)
        if cand is None:
            stale += 1
            continue
        config = make_config(cand)
        metrics = evaluate(config, p.target)
        obj = _objective(metrics, p.target)
        if obj > cur_obj:
            colors, cur_obj, stale = cand, obj, 0
            if obj > best_obj:
                best_obj = obj
                archive.append(_record(stream, seed, it, config, metrics, p.target))
        else:
            stale += 1
    return archive


def search(params: SearchParams, workers: int = 1, out=None) -> list[dict]:
    """Run ``params.streams`` independent hill climbs and merge their archives.

    Stream s uses seed ``params.seed + s`` and a fixed share of the iteration
    budget, so the merged archive (ordered by stream, then iteration) does not
    depend on ``workers``. With ``out`` (a path), records are written as JSON
    lines, stream by stream.
    """
    params.validate()
    share, extra = divmod(params.iterations, params.streams)
    jobs = [(params, s, share + (1 if s < extra else 0)) for s in range(params.streams)]
    fh = open(out, "w", encoding="utf-8") if out is not None else None
    archive: list[dict] = []
    try:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_run_stream, jobs)
                for recs in results:
                    archive.extend(recs)
                    if fh:
                        fh.writelines(json.dumps(r, sort_keys=True) + "\n" for r in recs)
                        fh.flush()
        else:
            for job in jobs:
                recs = _run_stream(job)
                archive.extend(recs)
                if fh:
                    fh.writelines(json.dumps(r, sort_keys=True) + "\n" for r in recs)
                    fh.flush()
    finally:
        if fh:
            fh.close()
    return archive


def verify_archive(records: Sequence[dict]) -> list[str]:
    """Recompute every archived metric; return a list of mismatches (empty if clean)."""
    problems = []
    for r in records:
        config = load_config(r["config"])
        target = Fraction(r["target"])
        fresh = _record(r["stream"], r["seed"], r["iter"], config, evaluate(config, target), target)
        if fresh != r:
            problems.append(f"stream {r['stream']} iter {r['iter']}: recomputed metrics differ")
            continue
        if r["bound_rec"] is not None and Fraction(r["dim"]) > Fraction(r["bound_rec"]):
            problems.append(f"stream {r['stream']} iter {r['iter']}: dim exceeds B_rec")
    return problems
