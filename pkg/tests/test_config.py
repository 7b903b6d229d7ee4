import json
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrlab.config import (
    ConfigError,
    dump_config,
    enumerate_lines,
    line_key,
    load_config,
    make_config,
    restrict_partition,
)
from mrlab.exact import GaussianRational, parse_gaussian
from oracles import collinear, lines_brute_force


def test_load_basic():
    cfg = load_config(b'{"field": "rational", "dim": 2, "colors": [[["0","0"],["1",0]],[["1/2",0]]]}')
    assert (cfg.n, cfg.dim, cfg.sizes) == (2, 2, (2, 1))
    assert cfg.colors[1][0] == (Fraction(1, 2), Fraction(0))


def test_load_duplicate_point():
    with pytest.raises(ConfigError, match="duplicate"):
        load_config('{"colors": [[[0,0]],[[0,0]]]}')
    with pytest.raises(ConfigError, match="duplicate"):
        load_config('{"colors": [[[0,0],["0/3",0]]]}')


def test_load_sorts_with_permutation():
    cfg = load_config('{"colors": [[[9,9]], [[0,0],[1,0],[2,0]]]}')
    assert cfg.sizes == (3, 1)
    assert cfg.permutation == (1, 0)
    # stable on ties
    cfg = load_config('{"colors": [[[0,0]], [[1,0]], [[2,0],[3,0]]]}')
    assert cfg.permutation == (2, 0, 1)


@pytest.mark.parametrize("text,where", [
    ('{"colors": [[[0,0]],[[1]]]}', "color 1 point 0"),
    ('{"colors": [[[0,0]],[]]}', "color 1 is empty"),
    ('{"colors": [[["1/0",0]]]}', "color 0 point 0"),
    ('{"colors": [[["x",0]]]}', "color 0 point 0"),
    ('{"dim": 3, "colors": [[[0,0]]]}', "expected 3"),
    ('{"field": "real", "colors": [[[0]]]}', "unknown field"),
    ('not json', "invalid JSON"),
])
def test_load_errors_name_location(text, where):
    with pytest.raises(ConfigError, match=where):
        load_config(text)


def test_roundtrip(fixtures):
    for cfg in fixtures.values():
        assert load_config(dump_config(cfg)) == cfg
    shuffled = load_config('{"colors": [[[5,5]], [[0,0],[1,0]], [[7,1],[2,2],[3,3]]]}')
    again = load_config(dump_config(shuffled))
    assert again == shuffled and again.permutation == (2, 1, 0)


def test_gaussian_config_roundtrip():
    text = json.dumps({"field": "gaussian", "dim": 2,
                       "colors": [[["i", "0"], ["1+i", "1"]], [["1/2-i", "3"]]]})
    cfg = load_config(text)
    assert cfg.colors[0][0][0] == GaussianRational(0, 1)
    assert load_config(dump_config(cfg)) == cfg


def test_enumerate_small():
    three = make_config([[(0, 0), (1, 1), (2, 2)]])
    assert [len(ln) for ln in enumerate_lines(three)] == [3]
    tri = make_config([[(0, 0), (1, 0), (0, 1)]])
    assert sorted(len(ln) for ln in enumerate_lines(tri)) == [2, 2, 2]


def test_enumerate_grid_matches_brute_force():
    grid = [(x, y) for x in range(3) for y in range(3)]
    # frozen from the brute-force pass over all 36 pairs
    assert Counter(len(s) for s in lines_brute_force(grid)) == {3: 8, 2: 12}
    lines = enumerate_lines(make_config([grid]))
    assert Counter(len(ln) for ln in lines) == {3: 8, 2: 12}
    assert {frozenset(ln.flat) for ln in lines} == lines_brute_force(grid)


def _random_config(rng, m, d, lo=-2, hi=2, frac=False):
    while (hi - lo + 1) ** d < 2 * m:
        lo, hi = lo - 1, hi + 1
    pts = set()
    while len(pts) < m:
        if frac:
            pts.add(tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(d)))
        else:
            pts.add(tuple(rng.randint(lo, hi) for _ in range(d)))
    pts = list(pts)
    k = rng.randint(1, 3)
    return make_config([pts[i::k] for i in range(k) if pts[i::k]])


def test_line_key_canonical_random():
    rng = random.Random(11)
    for trial in range(60):
        cfg = _random_config(rng, rng.randint(2, 20), rng.randint(1, 4), frac=trial % 2 == 1)
        pts = cfg.points()
        lines = enumerate_lines(cfg)
        for rec in lines:
            for a, b in combinations(rec.flat, 2):
                assert line_key(pts[a], pts[b]) == rec.key
                assert line_key(pts[b], pts[a]) == rec.key
        assert sum(comb(len(rec), 2) for rec in lines) == comb(len(pts), 2)
        assert {frozenset(ln.flat) for ln in lines} == lines_brute_force(pts)


def test_line_key_gaussian():
    i = GaussianRational(0, 1)
    p, q, r = (GaussianRational(0), GaussianRational(1)), (i, 1 + i), (2 * i, 1 + 2 * i)
    cfg = make_config([[p, q, r], [(GaussianRational(5), GaussianRational(0))]], field="gaussian")
    lines = enumerate_lines(cfg)
    assert sorted(len(ln) for ln in lines) == [2, 2, 2, 3]
    assert line_key(p, q, "gaussian") == line_key(r, p, "gaussian")
    u, _ = line_key(p, q, "gaussian")
    assert u[0] == 1  # leading coordinate normalized to one


def test_gaussian_collinearity_is_complex():
    # (0,0), (1,i), (i,-1): the third is i times the second -> complex-collinear
    pts = [(parse_gaussian("0"), parse_gaussian("0")), (parse_gaussian("1"), parse_gaussian("i")),
           (parse_gaussian("i"), parse_gaussian("-1"))]
    cfg = make_config([pts], field="gaussian")
    assert [len(ln) for ln in enumerate_lines(cfg)] == [3]


def test_enumerate_is_deterministic(fixtures):
    for cfg in fixtures.values():
        assert enumerate_lines(cfg) == enumerate_lines(load_config(dump_config(cfg)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=12, unique=True))
def test_pair_coverage_property(pts):
    lines = enumerate_lines(make_config([pts]))
    assert sum(comb(len(rec), 2) for rec in lines) == comb(len(pts), 2)
    for rec in lines:
        members = [pts[i] for i in rec.flat]
        assert all(collinear(members[0], members[1], w) for w in members)


def test_restrict_partition():
    cfg = make_config([[(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 1)], [(5, 5)]])
    full = restrict_partition(cfg, 0, 3)
    assert (full.p1, full.p3) == ((), ()) and len(full.p2) == 6
    mid = restrict_partition(cfg, 1, 2)
    assert (mid.p1, mid.p2, mid.p3) == ((0, 1, 2), (3, 4), (5,))
    with pytest.raises(ValueError):
        restrict_partition(cfg, 2, 2)
    with pytest.raises(ValueError):
        restrict_partition(cfg, 0, 4)
