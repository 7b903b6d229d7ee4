"""Colored point configurations, line enumeration and the JSON file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .exact import (
    GAUSSIAN,
    RATIONAL,
    FIELDS,
    GaussianRational,
    conj,
    format_scalar,
    parse_scalar,
    sort_key,
    to_field,
)

Point = tuple  # tuple of Fractions or GaussianRationals


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending location."""


@dataclass(frozen=True)
class ColoredConfig:
    """Disjoint color classes V_1..V_n, sorted so sizes are nonincreasing.

    ``permutation[i]`` is the index the i-th class had in the caller's input.
    """

    dim: int
    colors: tuple[tuple[Point, ...], ...]
    field: str = RATIONAL
    permutation: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.colors)

    @property
    def m(self) -> int:
        return sum(self.sizes)

    def labels(self) -> list[tuple[int, int]]:
        """(color, index-within-color) for each point in flat order."""
        return [(c, k) for c, cls in enumerate(self.colors) for k in range(len(cls))]

    def points(self) -> list[Point]:
        return [p for cls in self.colors for p in cls]

    def color_of(self) -> list[int]:
        return [c for c, cls in enumerate(self.colors) for _ in cls]

    def offsets(self) -> list[int]:
        """Flat index of the first point of each color (plus the total)."""
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return out


def make_config(colors: Sequence[Sequence[Sequence]], field: str = RATIONAL,
                dim: int | None = None,
                permutation: Sequence[int] | None = None) -> ColoredConfig:
    """Validate and canonicalize; classes are stably sorted by size, largest first."""
    if field not in FIELDS:
        raise ConfigError(f"unknown field {field!r}")
    if not colors:
        raise ConfigError("configuration needs at least one color class")
    if permutation is None:
        permutation = list(range(len(colors)))
    if sorted(permutation) != list(range(len(colors))):
        raise ConfigError(f"permutation {list(permutation)} is not a permutation of 0..{len(colors) - 1}")
    seen: dict[Point, tuple[int, int]] = {}
    classes = []
    for c, cls in enumerate(colors):
        if not cls:
            raise ConfigError(f"color {c} is empty")
        pts = []
        for k, p in enumerate(cls):
            if dim is None:
                dim = len(p)
            if len(p) != dim:
                raise ConfigError(f"color {c} point {k}: {len(p)} coordinates, expected {dim}")
            try:
                pt = tuple(to_field(v, field) for v in p)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"color {c} point {k}: {exc}") from None
            if pt in seen:
                c0, k0 = seen[pt]
                raise ConfigError(f"duplicate point: color {c} point {k} equals color {c0} point {k0}")
            seen[pt] = (c, k)
            pts.append(pt)
        classes.append(tuple(pts))
    if dim is None or dim < 1:
        raise ConfigError("dimension must be positive")
    order = sorted(range(len(classes)), key=lambda i: -len(classes[i]))
    return ColoredConfig(dim=dim, colors=tuple(classes[i] for i in order), field=field,
                         permutation=tuple(permutation[i] for i in order))


def load_config(data) -> ColoredConfig:
    """Parse the JSON configuration format (bytes, str, or an already-parsed dict)."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "colors" not in data:
        raise ConfigError("expected an object with a 'colors' field")
    fld = data.get("field", RATIONAL)
    if fld not in FIELDS:
        raise ConfigError(f"unknown field {fld!r}")
    colors = []
    for c, cls in enumerate(data["colors"]):
        if not isinstance(cls, list):
            raise ConfigError(f"color {c}: expected a list of points")
        pts = []
        for k, p in enumerate(cls):
            if not isinstance(p, list):
                raise ConfigError(f"color {c} point {k}: expected a coordinate list")
            try:
                pts.append([parse_scalar(v, fld) for v in p])
            except ValueError as exc:
                raise ConfigError(f"color {c} point {k}: {exc}") from None
        colors.append(pts)
    dim = data.get("dim")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise ConfigError(f"bad dim {dim!r}")
    return make_config(colors, field=fld, dim=dim, permutation=data.get("permutation"))


def config_to_dict(config: ColoredConfig) -> dict:
    return {
        "field": config.field,
        "dim": config.dim,
        "colors": [[[format_scalar(v) for v in p] for p in cls] for cls in config.colors],
        "permutation": list(config.permutation),
    }


def dump_config(config: ColoredConfig) -> str:
    return json.dumps(config_to_dict(config))


# ------------------------------------------------------------------- lines

def _primitive_direction(v: Sequence, field: str) -> tuple:
    if field == GAUSSIAN:
        lead = next(x for x in v if x)
        return tuple(GaussianRational(x) / lead for x in v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    lead = next(a for a in ints if a)
    g = g if lead > 0 else -g
    return tuple(Fraction(a // g) for a in ints)


def _dot(a: Sequence, b: Sequence):
    """Hermitian over Q(i) (conjugate on the second argument); plain over Q."""
    return sum((x * conj(y) for x, y in zip(a, b)), Fraction(0))


def line_key(p: Point, q: Point, field: str = RATIONAL) -> tuple[tuple, tuple]:
    """Canonical (direction, base point) of the line through distinct p, q."""
    u = _primitive_direction([b - a for a, b in zip(p, q)], field)
    s = _dot(p, u) / _dot(u, u)
    base = tuple(a - s * b for a, b in zip(p, u))
    return u, base


def line_parameter(p: Point, key: tuple[tuple, tuple]):
    """s with p = base + s*u."""
    u, base = key
    return _dot([a - b for a, b in zip(p, base)], u) / _dot(u, u)


def _key_order(key):
    u, base = key
    return tuple(sort_key(x) for x in u) + tuple(sort_key(x) for x in base)


@dataclass(frozen=True)
class LineRecord:
    key: tuple[tuple, tuple]
    members: tuple[tuple[int, int], ...]  # (color, index) sorted
    flat: tuple[int, ...] = field(default=(), compare=False)  # flat point indices

    def __len__(self):
        return len(self.members)

    def colors(self) -> set[int]:
        return {c for c, _ in self.members}


def _integer_points(config: ColoredConfig) -> tuple[list[tuple[int, ...]], int] | None:
    """Points scaled by a common denominator, and that denominator; None over Q(i)."""
    if config.field != RATIONAL:
        return None
    pts = config.points()
    den = 1
    for p in pts:
        for v in p:
            den = den * v.denominator // gcd(den, v.denominator)
    return [tuple(int(v * den) for v in p) for p in pts], den


def _int_line_key(p: tuple[int, ...], q: tuple[int, ...]) -> tuple:
    """Integer analogue of :func:`line_key`: (u, (u.u) p - (p.u) u)."""
    u = [b - a for a, b in zip(p, q)]
    g = 0
    for a in u:
        g = gcd(g, a)
    if next(a for a in u if a) < 0:
        g = -g
    u = tuple(a // g for a in u)
    uu = sum(a * a for a in u)
    pu = sum(a * b for a, b in zip(p, u))
    return u, tuple(uu * a - pu * b for a, b in zip(p, u))


def _group_pairs(config: ColoredConfig, scaled) -> dict[tuple, set[int]]:
    pts = config.points()
    groups: dict[tuple, set[int]] = {}
    for a, b in combinations(range(len(pts)), 2):
        if scaled is not None:
            key = _int_line_key(scaled[0][a], scaled[0][b])
        else:
            key = line_key(pts[a], pts[b], config.field)
        g = groups.setdefault(key, set())
        g.add(a)
        g.add(b)
    return groups


def line_groups(config: ColoredConfig) -> list[tuple[int, ...]]:
    """Flat point indices of every maximal line (no keys; unordered)."""
    return [tuple(sorted(g)) for g in _group_pairs(config, _integer_points(config)).values()]


def enumerate_lines(config: ColoredConfig) -> list[LineRecord]:
    """All maximal lines through at least two configuration points, sorted by key."""
    labels = config.labels()
    scaled = _integer_points(config)
    groups = _group_pairs(config, scaled)
    out = []
    if scaled is not None:
        # same order as the rational keys: u first, then w = base * (u.u) * den
        den = scaled[1]
        for (u, w) in sorted(groups):
            flat = tuple(sorted(groups[(u, w)]))
            uu = sum(a * a for a in u)
            key = (tuple(Fraction(a) for a in u), tuple(Fraction(b, uu * den) for b in w))
            out.append(LineRecord(key=key, members=tuple(labels[i] for i in flat), flat=flat))
        return out
    for key in sorted(groups, key=_key_order):
        flat = tuple(sorted(groups[key]))
        out.append(LineRecord(key=key, members=tuple(labels[i] for i in flat), flat=flat))
    return out


def format_line(rec: LineRecord) -> dict:
    u, base = rec.key
    return {
        "direction": [format_scalar(x) for x in u],
        "base": [format_scalar(x) for x in base],
        "members": [list(m) for m in rec.members],
    }


# --------------------------------------------------------------- partitions

@dataclass(frozen=True)
class Partition:
    """Cut 0 <= x < y <= n into P1 = V_1..V_x, P2 = V_{x+1}..V_y, P3 = rest.

    The point sets are flat indices into ``config.points()``.
    """

    x: int
    y: int
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    p3: tuple[int, ...]

    def part_of(self) -> dict[int, int]:
        out = {i: 1 for i in self.p1}
        out.update({i: 2 for i in self.p2})
        out.update({i: 3 for i in self.p3})
        return out


def restrict_partition(config: ColoredConfig, x: int, y: int) -> Partition:
    if not (0 <= x < y <= config.n):
        raise ValueError(f"need 0 <= x < y <= n={config.n}, got x={x}, y={y}")
    off = config.offsets()
    return Partition(
        x=x, y=y,
        p1=tuple(range(off[0], off[x])),
        p2=tuple(range(off[x], off[y])),
        p3=tuple(range(off[y], off[config.n])),
    )
