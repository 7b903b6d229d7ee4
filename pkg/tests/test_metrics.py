from fractions import Fraction

import pytest

from mrlab.config import make_config
from mrlab.exact import affine_dim
from mrlab.generators import gen_grid
from mrlab.metrics import compute_delta, hypothesis_delta, is_mr_configuration
from oracles import delta_brute_force


def test_delta_all_on_one_line():
    cfg = make_config([[(0, 0), (2, 0), (4, 0)], [(1, 0), (3, 0), (5, 0)]])
    prof = compute_delta(cfg)
    assert prof.counts == (2,) * 6
    assert prof.delta == Fraction(2, 3)


def test_delta_general_position():
    cfg = make_config([[(0, 0), (1, 3), (4, 1)], [(2, 7), (7, 2), (5, 5)]])
    assert compute_delta(cfg).delta == 0


def test_delta_grid_parity_matches_oracle():
    cfg = gen_grid(3, "parity")
    # frozen from the cubic oracle: the center only sees corners along the
    # diagonals, which carry no edge midpoint
    assert delta_brute_force([list(c) for c in cfg.colors]) == 0
    assert cfg.sizes == (5, 4)
    prof = compute_delta(cfg)
    assert prof.delta == 0
    corner = cfg.colors[0].index((0, 0))
    assert prof.counts[corner] == 2


def test_singleton_convention():
    cfg = make_config([[(0, 0), (2, 0)], [(1, 0)], [(5, 5)]])
    lenient = compute_delta(cfg)
    strict = compute_delta(cfg, singleton_vacuous=False)
    assert lenient.delta == Fraction(1, 2)
    assert strict.delta == 0 and lenient.delta_strict == 0
    assert hypothesis_delta(cfg) == 0


def test_delta_bounds_and_oracle(corpus):
    for cfg in corpus:
        if cfg.m > 40:
            continue
        prof = compute_delta(cfg)
        for v, c in enumerate(prof.counts):
            assert 0 <= c <= cfg.sizes[cfg.color_of()[v]] - 1
        colors = [list(c) for c in cfg.colors]
        assert prof.delta == delta_brute_force(colors)
        assert prof.delta_strict == delta_brute_force(colors, singleton_vacuous=False)


def test_delta_affine_invariance(corpus):
    shift = Fraction(3, 7)
    for cfg in corpus[:30]:
        moved = make_config([[tuple(Fraction(-2, 5) * x + shift for x in p) for p in cls]
                             for cls in cfg.colors])
        assert compute_delta(moved) == compute_delta(cfg)


def test_mr_examples():
    ok, witness = is_mr_configuration(make_config([[(0, 0), (2, 0)], [(1, 0)]]))
    assert ok and witness is None
    cfg = make_config([[(0, 0), (6, 0), (0, 6)], [(1, 1)]])
    ok, witness = is_mr_configuration(cfg)
    assert not ok
    assert witness.colors() == {0} and len(witness) == 2
    with pytest.raises(ValueError):
        is_mr_configuration(make_config([[(0, 0)], [(1, 0)], [(2, 0)]]))


def test_mr_implies_collinear(fixtures, corpus):
    checked = 0
    for cfg in list(fixtures.values()) + corpus:
        if cfg.n == 2 and is_mr_configuration(cfg)[0]:
            assert affine_dim(cfg.points()) == 1
            checked += 1
    assert checked >= 3


def test_mr_collinear_delta():
    cfg = make_config([[(0, 0), (2, 0), (4, 0), (6, 0)], [(1, 0), (3, 0)]])
    assert is_mr_configuration(cfg)[0]
    assert compute_delta(cfg).delta == min(Fraction(3, 4), Fraction(1, 2))
