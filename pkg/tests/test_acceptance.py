"""The ten acceptance criteria, one test each. Run with

    pytest tests/test_acceptance.py -v

and read the "acceptance criteria" section of the summary for PASS/FAIL lines.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from corpus import random_design_matrix
from mrlab.bounds import (
    block_cut_params,
    classify_indices,
    epsilon_grid,
    theorem_bound,
    verify_tail_bound,
)
from mrlab.collinearity import assemble, audit_claim, check_hypotheses, verify_lemma31
from mrlab.config import load_config, restrict_partition
from mrlab.designs import audit_design, build_triples, rank_bound_thm22, verify_triples
from mrlab.exact import affine_dim, exact_rank
from mrlab.generators import SearchParams, gen_collinear, search
from mrlab.metrics import compute_delta, hypothesis_delta, is_mr_configuration
from oracles import delta_brute_force, triple_properties

acceptance = pytest.mark.acceptance


def _cuts(cfg):
    return [(x, y) for x in range(cfg.n) for y in range(x + 1, cfg.n + 1)]


@pytest.fixture(scope="module")
def searched():
    """Configurations with delta* > 0 found by a short seeded search."""
    arch = search(SearchParams(iterations=2000, seed=17, streams=4))
    out = [load_config(r["config"]) for r in arch if Fraction(r["delta"]) > 0]
    return out


@acceptance(1, "triple systems r=3..25, exact counts (< 5 s)")
def test_ac1_triple_systems():
    t0 = time.perf_counter()
    build_triples.cache_clear()
    for r in range(3, 26):
        ts = build_triples(r)
        assert verify_triples(ts) == (True, None)
        props = triple_properties(r, ts.triples)
        assert all(props.values()), (r, props)
        assert len(ts.triples) == r * r - r
        assert all(sum(a in t for t in ts.triples) == 3 * (r - 1) for a in range(1, r + 1))
    assert time.perf_counter() - t0 < 5


@acceptance(2, "rank >= n - ntq(q-1)/k on 200 design matrices (< 60 s)")
def test_ac2_thm22_certificate():
    t0 = time.perf_counter()
    rng = random.Random(2022)
    tested = 0
    for _ in range(200):
        mat = random_design_matrix(rng)
        assert mat.ncols <= 40 and mat.nrows <= 400
        params = audit_design(mat)
        if params.k == 0:
            # some column untouched: restrict to the touched columns
            used = sorted({j for (_, j), _ in mat.items()})
            mat = mat.select_columns(used)
            params = audit_design(mat)
        assert exact_rank(mat) >= rank_bound_thm22(mat.ncols, params)
        tested += 1
    assert tested == 200
    assert time.perf_counter() - t0 < 60


@acceptance(3, "assembly invariants on 100 configs x all cuts (< 120 s)")
def test_ac3_assembly(corpus):
    t0 = time.perf_counter()
    assert len(corpus) == 100
    for cfg in corpus:
        assert cfg.m <= 50 and cfg.dim <= 6 and cfg.n <= 4
        for x, y in _cuts(cfg):
            asm = assemble(cfg, restrict_partition(cfg, x, y))
            assert (asm.A @ asm.M).is_zero()
            assert asm.a_block(3).is_zero()
            assert all(len(s) == 3 for s in asm.A.row_supports())
            cols = [c for c in asm.A.column_supports() if c]
            assert all(len(a & b) <= 6 for a, b in combinations(cols, 2))
            a1m1 = asm.a_block(1) @ asm.m_block(1)
            a2m2 = asm.a_block(2) @ asm.m_block(2)
            assert exact_rank(a2m2) == exact_rank(a1m1)
    assert time.perf_counter() - t0 < 120


def _constant_choices(cfg, part, delta):
    """(c1, c2) pairs to try: the tightest allowed, a halved pair and two fixed ones."""
    vy = cfg.sizes[part.y - 1]
    out = [(Fraction(1, 4), Fraction(1, 8)), (Fraction(1, 2), Fraction(1, 4))]
    if part.p2:
        c1 = Fraction(vy, len(part.p2))
        c2 = delta - Fraction(len(part.p3), vy)
        if c2 > 0:
            out += [(c1, c2), (c1 / 2, c2 / 2)]
    return out


@acceptance(4, "claim k >= 3 c1 c2 |P2| whenever (1)-(2) hold")
def test_ac4_claim(corpus):
    applied = 0
    for cfg in corpus:
        delta = hypothesis_delta(cfg)
        for x, y in _cuts(cfg):
            part = restrict_partition(cfg, x, y)
            asm = None
            for c1, c2 in _constant_choices(cfg, part, delta):
                if not check_hypotheses(cfg, part, c1, c2)[0]:
                    continue
                asm = asm or assemble(cfg, part)
                rep = audit_claim(asm, c1, c2)
                assert rep.status == "holds", (x, y, c1, c2, rep.to_dict())
                assert rep.params.k >= 3 * c1 * c2 * len(part.p2)
                applied += 1
    assert applied > 50


@acceptance(5, "dim(P2) <= dim(P1) + 12/(c1c2) at eps = delta*/2 blocks")
def test_ac5_lemma31(corpus, fixtures):
    applied = 0
    for cfg in corpus + list(fixtures.values()):
        delta = hypothesis_delta(cfg)
        if delta <= 0:
            continue
        decomp = classify_indices(cfg.sizes, delta, delta / 2)
        for x, y, c1, c2 in block_cut_params(decomp):
            rep = verify_lemma31(cfg, restrict_partition(cfg, x, y), c1, c2, delta)
            assert rep.status == "holds", rep.to_dict()
            assert rep.values["dim_P2"] <= rep.values["dim_P1"] + 12 / (c1 * c2)
            applied += 1
    assert applied > 50


@acceptance(6, "tail bound and corollary on 1000 size vectors (< 10 s)")
def test_ac6_tail():
    t0 = time.perf_counter()
    rng = random.Random(36)
    checks = 0
    for _ in range(1000):
        n = rng.randint(1, 12)
        sizes = sorted((rng.randint(1, 10 ** 6) for _ in range(n)), reverse=True)
        delta = Fraction(rng.randint(1, 1000), 1000)
        eps = delta * Fraction(rng.randint(1, 999), 1000)
        rep = verify_tail_bound(classify_indices(sizes, delta, eps))
        assert rep.ok, rep.violations
        checks += len(rep.checks)
    assert checks >= 2000
    assert time.perf_counter() - t0 < 10


@acceptance(7, "adim <= dim <= B_rec = B_sum <= B_coarse on 16-point grids (< 120 s)")
def test_ac7_theorem(corpus, fixtures, searched, tmp_path):
    t0 = time.perf_counter()
    configs = [c for c in list(fixtures.values()) + corpus + searched if hypothesis_delta(c) > 0]
    assert len(configs) > 60 and len(searched) > 0
    for cfg in configs:
        delta = hypothesis_delta(cfg)
        for eps in epsilon_grid(delta, 16):
            rep = theorem_bound(cfg, delta, eps, half_delta=False)
            if not rep.holds:
                path = tmp_path / "counterexample.json"
                path.write_text(json.dumps(rep.witness, sort_keys=True, indent=2))
                pytest.fail(f"counterexample written to {path}: {rep.witness['failed']}")
            assert rep.adim <= rep.dim <= rep.b_rec == rep.b_sum <= rep.b_coarse
    assert time.perf_counter() - t0 < 120


@acceptance(8, "classical MR configs are collinear; gen_collinear fixtures pass")
def test_ac8_classical(fixtures, corpus):
    collinear = [gen_collinear(2, s) for s in ([2, 1], [3, 3], [5, 2], [4, 4])]
    for cfg in collinear:
        ok, _ = is_mr_configuration(cfg)
        assert ok and affine_dim(cfg.points()) == 1
    for cfg in list(fixtures.values()) + corpus:
        if cfg.n == 2 and is_mr_configuration(cfg)[0]:
            assert affine_dim(cfg.points()) == 1


@acceptance(9, "compute_delta matches the cubic oracle on corpus configs <= 40 points")
def test_ac9_delta_oracle(corpus):
    checked = 0
    for cfg in corpus:
        if cfg.m > 40:
            continue
        colors = [list(c) for c in cfg.colors]
        prof = compute_delta(cfg)
        assert prof.delta == delta_brute_force(colors)
        assert prof.delta_strict == delta_brute_force(colors, singleton_vacuous=False)
        checked += 1
    assert checked >= 80


def _cli_search(tmp_path, name, workers):
    out = tmp_path / name
    proc = subprocess.run(
        [sys.executable, "-m", "mrlab", "search", "--iterations", "10000", "--G", "6",
         "--budget", "12", "--seed", "2024", "--workers", str(workers), "--out", str(out)],
        capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    return out.read_bytes(), proc.stdout.replace(str(out), "ARCHIVE")


@acceptance(10, "search archives byte-identical across runs and workers 1 vs 4 (< 60 s)")
def test_ac10_determinism(tmp_path):
    t0 = time.perf_counter()
    a, out_a = _cli_search(tmp_path, "a.jsonl", 1)
    t1 = time.perf_counter() - t0
    b, out_b = _cli_search(tmp_path, "b.jsonl", 1)
    t2 = time.perf_counter()
    c, out_c = _cli_search(tmp_path, "c.jsonl", 4)
    t4 = time.perf_counter() - t2
    assert a == b == c
    assert out_a == out_b == out_c
    assert t1 < 60 and t4 < 60
