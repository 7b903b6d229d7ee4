"""``mrlab`` command line: JSON on stdout, log lines on stderr.

Exit codes: 0 success / inequality holds, 1 verified violation or failed
hypothesis, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    HypothesisError,
    classify_indices,
    coarse_constants,
    optimize_epsilon,
    theorem_bound,
    verify_tail_bound,
)
from .collinearity import assemble, audit_claim, verify_lemma31
from .config import (
    ColoredConfig,
    ConfigError,
    config_to_dict,
    enumerate_lines,
    format_line,
    load_config,
    make_config,
    restrict_partition,
)
from .designs import audit_design, build_triples, rank_bound_thm22, verify_triples
from .exact import GAUSSIAN, SparseExactMatrix, affine_dim, exact_rank, format_scalar, linear_dim, parse_rational
from .generators import GRID_COLORINGS, SearchParams, gen_collinear, gen_grid, search, verify_archive
from .metrics import compute_delta, hypothesis_delta, mr_report

log = logging.getLogger("mrlab")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def _read_config(path: str) -> ColoredConfig:
    try:
        return load_config(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except ConfigError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)


# --------------------------------------------------------------- commands

def cmd_gen(args) -> tuple[int, object]:
    if args.kind == "collinear":
        config = gen_collinear(len(args.sizes), args.sizes)
    else:
        config = gen_grid(args.side, args.coloring)
    if args.field == GAUSSIAN:
        config = make_config(config.colors, field=GAUSSIAN, permutation=config.permutation)
    data = config_to_dict(config)
    _write(args.out, json.dumps(data, sort_keys=True, indent=2) + "\n")
    return 0, data


def cmd_delta(args) -> tuple[int, object]:
    config = _read_config(args.config)
    profile = compute_delta(config, singleton_vacuous=not args.strict_singletons)
    out = profile.to_dict()
    if config.n == 2:
        out["mr_configuration"] = mr_report(config)
    return 0, out


def cmd_dim(args) -> tuple[int, object]:
    config = _read_config(args.config)
    pts = config.points()
    return 0, {"m": config.m, "d": config.dim, "n": config.n, "sizes": list(config.sizes),
               "linear_dim": linear_dim(pts), "affine_dim": affine_dim(pts)}


def cmd_lines(args) -> tuple[int, object]:
    config = _read_config(args.config)
    lines = enumerate_lines(config)
    if args.min_points > 2:
        lines = [ln for ln in lines if len(ln) >= args.min_points]
    return 0, {"count": len(lines), "lines": [format_line(ln) for ln in lines]}


def cmd_design_audit(args) -> tuple[int, object]:
    config = _read_config(args.config)
    part = _partition(config, args)
    asm = assemble(config, part)
    A2 = asm.a_block(2)
    params = audit_design(A2)
    out = {
        "x": part.x, "y": part.y,
        "extraordinary_lines": [dict(format_line(el.line), ell=el.ell) for el in asm.lines],
        "A_shape": list(asm.A.shape),
        "A2_shape": list(A2.shape),
        "q": params.q, "k": params.k, "t": params.t,
        "AM_zero": (asm.A @ asm.M).is_zero(),
        "A3_zero": asm.a_block(3).is_zero(),
    }
    if params.k:
        out["thm22_bound"] = format_scalar(rank_bound_thm22(A2.ncols, params))
    code = 0
    if args.c1 is not None and args.c2 is not None:
        claim = audit_claim(asm, args.c1, args.c2, args.delta)
        out["claim"] = claim.to_dict()
        code = 0 if claim.status == "holds" else 1
    _write(args.out, asm.A.to_text())
    return code, out


def cmd_bound(args) -> tuple[int, object]:
    config = _read_config(args.config)
    delta = args.delta if args.delta is not None else hypothesis_delta(config)
    try:
        if args.optimize:
            _, rep = optimize_epsilon(config, delta, args.grid)
        else:
            if args.eps is None:
                raise UsageError("bound needs --eps or --optimize")
            rep = theorem_bound(config, delta, args.eps)
    except HypothesisError as exc:
        empty = str(exc).startswith("hypothesis empty")
        return 1, {"status": "hypothesis empty" if empty else "hypothesis failed",
                   "detail": str(exc), "delta": format_scalar(delta)}
    out = rep.to_dict()
    if not rep.holds:
        _write(args.out, json.dumps(rep.witness, sort_keys=True, indent=2) + "\n")
    return (0 if rep.holds else 1), out


def cmd_verify(args) -> tuple[int, object]:
    what = args.what
    if what == "triples":
        if args.r is None:
            raise UsageError("verify triples needs --r")
        ts = build_triples(args.r)
        ok, bad = verify_triples(ts)
        out = {"r": ts.r, "count": len(ts.triples), "ok": ok,
               "violation": None if bad is None else bad.detail}
        _write(args.out, ts.to_json() + "\n")
        return (0 if ok else 1), out
    if what == "tail":
        if args.sizes is None or args.delta is None or args.eps is None:
            raise UsageError("verify tail needs --sizes, --delta, --eps")
        decomp = classify_indices(args.sizes, args.delta, args.eps)
        rep = verify_tail_bound(decomp)
        out = dict(rep.to_dict(), large_indices=decomp.large_indices,
                   c_eps=format_scalar(decomp.c_eps),
                   coarse=coarse_constants(args.eps, args.delta).to_dict())
        return (0 if rep.ok else 1), out
    if what == "lemma31":
        config = _need_config(args)
        if args.c1 is None or args.c2 is None:
            raise UsageError("verify lemma31 needs --c1 and --c2")
        rep = verify_lemma31(config, _partition(config, args), args.c1, args.c2, args.delta)
        if rep.witness:
            _write(args.out, json.dumps(rep.witness, sort_keys=True, indent=2) + "\n")
        return (0 if rep.status == "holds" else 1), rep.to_dict()
    # thm22: a matrix file, or the A2 block of a configuration cut
    if args.matrix:
        try:
            mat = SparseExactMatrix.from_text(Path(args.matrix).read_text(encoding="utf-8"))
        except (OSError, ValueError, IndexError) as exc:
            raise UsageError(f"{args.matrix}: {exc}") from None
    else:
        config = _need_config(args)
        mat = assemble(config, _partition(config, args)).a_block(2)
    params = audit_design(mat)
    rank = exact_rank(mat)
    out = {"shape": list(mat.shape), "q": params.q, "k": params.k, "t": params.t, "rank": rank}
    if params.k == 0:
        out.update(bound=None, holds=True, note="k = 0: no bound applies")
        return 0, out
    bound = rank_bound_thm22(mat.ncols, params)
    out.update(bound=format_scalar(bound), holds=rank >= bound)
    return (0 if rank >= bound else 1), out


def cmd_search(args) -> tuple[int, object]:
    params = SearchParams(n=args.n, side=args.side, budget=args.budget,
                          iterations=args.iterations, seed=args.seed, dim=args.dim,
                          target=args.target, streams=args.streams, patience=args.patience)
    try:
        archive = search(params, workers=args.workers, out=args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    problems = verify_archive(archive)
    best = max(archive, key=lambda r: (Fraction(r["delta"]) >= params.target, r["dim"],
                                       Fraction(r["delta"])))
    return (0 if not problems else 1), {
        "records": len(archive),
        "reverified": not problems,
        "problems": problems,
        "best": {k: best[k] for k in ("stream", "iter", "delta", "dim", "bound_rec")},
        "archive": args.out,
    }


def _need_config(args) -> ColoredConfig:
    if not args.config:
        raise UsageError(f"verify {args.what} needs a configuration file")
    return _read_config(args.config)


def _partition(config: ColoredConfig, args):
    x = 0 if args.x is None else args.x
    y = config.n if args.y is None else args.y
    try:
        return restrict_partition(config, x, y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mrlab {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a fixture configuration")
    g.add_argument("kind", choices=("collinear", "grid"))
    g.add_argument("--sizes", type=_sizes, default=[3, 3], help="class sizes, e.g. 3,3")
    g.add_argument("--side", type=int, default=3)
    g.add_argument("--coloring", choices=GRID_COLORINGS, default="rows")
    g.add_argument("--field", choices=("rational", "gaussian"), default="rational")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("delta", help="measure delta*")
    d.add_argument("config")
    d.add_argument("--strict-singletons", action="store_true",
                   help="singleton classes force delta* = 0")
    d.set_defaults(func=cmd_delta)

    s = sub.add_parser("dim", help="linear and affine span dimension")
    s.add_argument("config")
    s.set_defaults(func=cmd_dim)

    ln = sub.add_parser("lines", help="enumerate maximal lines")
    ln.add_argument("config")
    ln.add_argument("--min-points", type=int, default=2)
    ln.set_defaults(func=cmd_lines)

    def cut_flags(sp, constants=True):
        sp.add_argument("--x", type=int)
        sp.add_argument("--y", type=int)
        if constants:
            sp.add_argument("--c1", type=_rational)
            sp.add_argument("--c2", type=_rational)
            sp.add_argument("--delta", type=_rational)

    a = sub.add_parser("design-audit", help="assemble A for a cut and audit A2")
    a.add_argument("config")
    cut_flags(a)
    a.add_argument("--out", help="write A in sparse text format")
    a.set_defaults(func=cmd_design_audit)

    b = sub.add_parser("bound", help="dimension bound chain")
    b.add_argument("config")
    b.add_argument("--eps", type=_rational)
    b.add_argument("--delta", type=_rational)
    b.add_argument("--optimize", action="store_true")
    b.add_argument("--grid", type=int, default=16)
    b.add_argument("--out", help="witness file written on violation")
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="run one verifier")
    v.add_argument("what", choices=("triples", "tail", "lemma31", "thm22"))
    v.add_argument("config", nargs="?")
    v.add_argument("--r", type=int)
    v.add_argument("--sizes", type=_sizes)
    v.add_argument("--eps", type=_rational)
    v.add_argument("--matrix")
    v.add_argument("--out")
    cut_flags(v)
    v.set_defaults(func=cmd_verify)

    se = sub.add_parser("search", help="seeded hill-climbing search")
    se.add_argument("--n", type=int, default=2)
    se.add_argument("--side", "--G", dest="side", type=int, default=6)
    se.add_argument("--budget", type=int, default=12)
    se.add_argument("--iterations", type=int, default=1000)
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--dim", type=int, default=3)
    se.add_argument("--target", type=_rational, default=Fraction(1, 4))
    se.add_argument("--streams", type=int, default=4)
    se.add_argument("--patience", type=int, default=500)
    se.add_argument("--workers", type=int, default=1)
    se.add_argument("--out")
    se.set_defaults(func=cmd_search)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="mrlab: %(message)s", stream=sys.stderr)
    try:
        code, payload = args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"mrlab: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"mrlab: error: {exc}", file=sys.stderr)
        return 2
    stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())
