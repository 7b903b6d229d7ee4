"""Exact toolkit for quantitative multi-colored Motzkin-Rabin configurations."""

__version__ = "0.1.0"

from .exact import (  # noqa: E402
    GaussianRational,
    SparseExactMatrix,
    affine_dim,
    exact_rank,
    linear_dim,
    parse_scalar,
    format_scalar,
)
from .config import (  # noqa: E402
    ColoredConfig,
    ConfigError,
    LineRecord,
    Partition,
    dump_config,
    enumerate_lines,
    load_config,
    make_config,
    restrict_partition,
)
from .metrics import DeltaProfile, compute_delta, hypothesis_delta, is_mr_configuration  # noqa: E402
from .designs import (  # noqa: E402
    DesignParams,
    TripleSystem,
    audit_design,
    build_triples,
    rank_bound_thm22,
    verify_triples,
)
from .collinearity import (  # noqa: E402
    assemble,
    audit_claim,
    find_extraordinary_lines,
    verify_lemma31,
)
from .bounds import (  # noqa: E402
    HypothesisError,
    best_epsilon,
    block_cut_params,
    classify_indices,
    coarse_constants,
    optimize_epsilon,
    theorem_bound,
    verify_tail_bound,
)
from .generators import SearchParams, SplitMix64, gen_collinear, gen_grid, search, verify_archive  # noqa: E402

__all__ = [
    "ColoredConfig",
    "ConfigError",
    "DeltaProfile",
    "DesignParams",
    "GaussianRational",
    "HypothesisError",
    "LineRecord",
    "Partition",
    "SearchParams",
    "SparseExactMatrix",
    "SplitMix64",
    "TripleSystem",
    "affine_dim",
    "assemble",
    "audit_claim",
    "audit_design",
    "best_epsilon",
    "block_cut_params",
    "build_triples",
    "classify_indices",
    "coarse_constants",
    "compute_delta",
    "dump_config",
    "enumerate_lines",
    "exact_rank",
    "find_extraordinary_lines",
    "format_scalar",
    "gen_collinear",
    "gen_grid",
    "hypothesis_delta",
    "is_mr_configuration",
    "linear_dim",
    "load_config",
    "make_config",
    "optimize_epsilon",
    "parse_scalar",
    "rank_bound_thm22",
    "restrict_partition",
    "search",
    "theorem_bound",
    "verify_archive",
    "verify_lemma31",
    "verify_tail_bound",
    "verify_triples",
]
