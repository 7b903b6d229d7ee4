"""Extraordinary lines, the collinearity matrix A with A.M = 0, and the
dimension inequality for a cut of the color classes.

Given a cut (P1, P2, P3), a line is extraordinary when it passes through a
point of P2 and through at least three points of P1 u P2. Each such line with
l associated points contributes l^2 - l rows to A, one per triple of a
triple system over its associated points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .config import (
    ColoredConfig,
    LineRecord,
    Partition,
    config_to_dict,
    enumerate_lines,
    format_line,
    line_parameter,
)
from .designs import DesignParams, audit_design, build_triples, rank_bound_thm22
from .exact import SparseExactMatrix, exact_rank, format_scalar, sort_key
from .metrics import hypothesis_delta


@dataclass(frozen=True)
class ExtraordinaryLine:
    line: LineRecord
    associated: tuple[int, ...]  # flat indices in P1 u P2, ordered along the line
    params: tuple  # line parameter s of each associated point
    extra: tuple[int, ...]  # flat indices in P3 (on the line, not associated)

    @property
    def ell(self) -> int:
        return len(self.associated)


def find_extraordinary_lines(config: ColoredConfig, part: Partition,
                             lines: list[LineRecord] | None = None) -> list[ExtraordinaryLine]:
    if lines is None:
        lines = enumerate_lines(config)
    where = part.part_of()
    pts = config.points()
    out = []
    for rec in lines:
        assoc = [i for i in rec.flat if where[i] in (1, 2)]
        if len(assoc) < 3 or not any(where[i] == 2 for i in assoc):
            continue
        s = {i: line_parameter(pts[i], rec.key) for i in assoc}
        assoc.sort(key=lambda i: sort_key(s[i]))
        out.append(ExtraordinaryLine(
            line=rec,
            associated=tuple(assoc),
            params=tuple(s[i] for i in assoc),
            extra=tuple(i for i in rec.flat if where[i] == 3),
        ))
    return out


@dataclass
class CollinearityAssembly:
    config: ColoredConfig
    partition: Partition
    lines: list[ExtraordinaryLine]
    A: SparseExactMatrix  # |T| x |V|
    M: SparseExactMatrix  # |V| x d
    row_origin: list[tuple[int, int]] = field(default_factory=list)  # (line, triple index)

    def a_block(self, which: int) -> SparseExactMatrix:
        return self.A.select_columns(self._cols(which))

    def m_block(self, which: int) -> SparseExactMatrix:
        return self.M.select_rows(self._cols(which))

    def _cols(self, which: int) -> tuple[int, ...]:
        return (self.partition.p1, self.partition.p2, self.partition.p3)[which - 1]


def point_matrix(config: ColoredConfig) -> SparseExactMatrix:
    return SparseExactMatrix.from_dense(config.points(), field=config.field, ncols=config.dim)


def assemble(config: ColoredConfig, part: Partition,
             lines: list[LineRecord] | None = None) -> CollinearityAssembly:
    """Build A row by row and check A.M = 0, A3 = 0 and 3-sparse rows."""
    ext = find_extraordinary_lines(config, part, lines)
    entries = []
    origin = []
    for li, el in enumerate(ext):
        assert el.ell >= 3, "extraordinary line with fewer than 3 associated points"
        ts = build_triples(el.ell)
        for ti, (a, b, c) in enumerate(ts.triples):
            s1, s2, s3 = el.params[a - 1], el.params[b - 1], el.params[c - 1]
            h = (s2 - s3, s3 - s1, s1 - s2)
            assert all(h), "degenerate affine-dependence coefficients"
            row = len(origin)
            for col, val in zip((el.associated[a - 1], el.associated[b - 1],
                                 el.associated[c - 1]), h):
                entries.append((row, col, val))
            origin.append((li, ti))
    A = SparseExactMatrix(len(origin), config.m, entries, field=config.field)
    M = point_matrix(config)
    asm = CollinearityAssembly(config=config, partition=part, lines=ext, A=A, M=M,
                               row_origin=origin)
    assert (A @ M).is_zero(), "A.M != 0"
    assert asm.a_block(3).is_zero(), "A3 != 0"
    assert all(len(s) == 3 for s in A.row_supports()), "row support != 3"
    return asm


# ------------------------------------------------------------------ claims

def check_hypotheses(config: ColoredConfig, part: Partition, c1, c2,
                     delta=None) -> tuple[bool, list[str], Fraction]:
    """Inequalities |V_y| >= c1|P2| and (delta - c2)|V_y| >= |P3|.

    ``delta`` defaults to the measured (strict) delta; a caller-supplied value
    above it is rejected since the configuration is not (delta, n)-MR then.
    """
    c1, c2 = Fraction(c1), Fraction(c2)
    measured = hypothesis_delta(config)
    delta = measured if delta is None else Fraction(delta)
    problems = []
    if delta > measured:
        problems.append(f"delta={delta} exceeds measured delta*={measured}")
    if c1 <= 0 or c2 <= 0:
        problems.append("c1 and c2 must be positive")
    vy = config.sizes[part.y - 1]
    if vy < c1 * len(part.p2):
        problems.append(f"|V_y|={vy} < c1*|P2|={c1 * len(part.p2)}")
    if (delta - c2) * vy < len(part.p3):
        problems.append(f"(delta-c2)|V_y|={(delta - c2) * vy} < |P3|={len(part.p3)}")
    return not problems, problems, delta


@dataclass
class ClaimReport:
    status: str  # "holds" | "violated" | "hypotheses-failed"
    problems: list[str]
    params: DesignParams
    required_k: Fraction | None
    checks: dict[str, bool]
    per_color: list[dict]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "problems": self.problems,
            "q": self.params.q, "k": self.params.k, "t": self.params.t,
            "required_k": None if self.required_k is None else format_scalar(self.required_k),
            "checks": self.checks,
            "per_color": self.per_color,
        }


def _ext_partners(asm: CollinearityAssembly) -> dict[int, set[int]]:
    """Points sharing an extraordinary line with each point (excluding itself)."""
    partners: dict[int, set[int]] = {}
    for el in asm.lines:
        for i in el.associated:
            partners.setdefault(i, set()).update(j for j in el.associated if j != i)
    return partners


def audit_claim(asm: CollinearityAssembly, c1, c2, delta=None) -> ClaimReport:
    """Audit A2 as a (3, 3 c1 c2 |P2|, 6)-design matrix.

    Also exposes, per color class in P2, the two intermediate counts the
    argument passes through: points on extraordinary lines through p versus
    delta|V_i| - |P3| >= c2|V_i|, and versus c1 c2 |P2|.
    """
    config, part = asm.config, asm.partition
    ok, problems, delta = check_hypotheses(config, part, c1, c2, delta)
    c1, c2 = Fraction(c1), Fraction(c2)
    A2 = asm.a_block(2)
    params = audit_design(A2)
    if not ok:
        return ClaimReport("hypotheses-failed", problems, params, None, {}, [])
    required = 3 * c1 * c2 * len(part.p2)
    partners = _ext_partners(asm)
    colsup = A2.column_supports()
    color = config.color_of()
    per_color = []
    rows_ok = True
    for c in range(part.x, part.y):
        members = [i for i in part.p2 if color[i] == c]
        size = config.sizes[c]
        counts = [len(partners.get(i, ())) for i in members]
        triples = [len(colsup[part.p2.index(i)]) for i in members]
        floor_delta = delta * size - len(part.p3)
        entry = {
            "color": c,
            "size": size,
            "min_partners": min(counts),
            "min_triples": min(triples),
            "delta_floor": format_scalar(floor_delta),
            "c2_floor": format_scalar(c2 * size),
            "c1c2_floor": format_scalar(c1 * c2 * len(part.p2)),
            "partners_ge_delta_floor": min(counts) >= floor_delta,
            "delta_floor_ge_c2_floor": floor_delta >= c2 * size,
            "triples_eq_3_partners": all(t == 3 * n for t, n in zip(triples, counts)),
        }
        rows_ok &= (entry["partners_ge_delta_floor"] and entry["delta_floor_ge_c2_floor"]
                    and entry["triples_eq_3_partners"])
        per_color.append(entry)
    checks = {
        "q_le_3": params.q <= 3,
        "t_le_6": params.t <= 6,
        "k_ge_required": params.k >= required,
        "intermediate_counts": rows_ok,
    }
    status = "holds" if all(checks.values()) else "violated"
    return ClaimReport(status, [], params, required, checks, per_color)


@dataclass
class Lemma31Report:
    status: str  # "holds" | "violated" | "hypotheses-failed"
    problems: list[str]
    values: dict
    checks: dict[str, bool]
    claim: ClaimReport | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "problems": self.problems,
            "values": {k: (format_scalar(v) if isinstance(v, Fraction) else v)
                       for k, v in self.values.items()},
            "checks": self.checks,
            "claim": None if self.claim is None else self.claim.to_dict(),
            "witness": self.witness,
        }


def verify_lemma31(config: ColoredConfig, part: Partition, c1, c2, delta=None,
                   asm: CollinearityAssembly | None = None) -> Lemma31Report:
    """Exact check of dim(P2) <= dim(P1) + 12/(c1 c2) and its rank chain."""
    ok, problems, delta = check_hypotheses(config, part, c1, c2, delta)
    if not ok:
        return Lemma31Report("hypotheses-failed", problems, {}, {})
    c1, c2 = Fraction(c1), Fraction(c2)
    if asm is None:
        asm = assemble(config, part)
    slack = 12 / (c1 * c2)
    A1, A2 = asm.a_block(1), asm.a_block(2)
    M1, M2 = asm.m_block(1), asm.m_block(2)
    n2 = len(part.p2)
    rank_a2 = exact_rank(A2)
    rank_m1, rank_m2 = exact_rank(M1), exact_rank(M2)
    rank_a2m2 = exact_rank(A2 @ M2)
    rank_a1m1 = exact_rank(A1 @ M1)
    claim = audit_claim(asm, c1, c2, delta)
    values = {
        "delta": delta,
        "P1": len(part.p1), "P2": n2, "P3": len(part.p3),
        "rows_A": asm.A.nrows,
        "extraordinary_lines": len(asm.lines),
        "rank_A2": rank_a2,
        "thm22_bound_A2": rank_bound_thm22(n2, claim.params) if claim.params.k else None,
        "rank_A2_floor": n2 - slack,
        "rank_A2M2": rank_a2m2,
        "rank_A1M1": rank_a1m1,
        "dim_P1": rank_m1,
        "dim_P2": rank_m2,
        "slack_12_over_c1c2": slack,
    }
    checks = {
        "claim": claim.status == "holds",
        "rank_A2_ge_floor": rank_a2 >= n2 - slack,
        "rank_A2M2_ge_rankM2_minus_deficit": rank_a2m2 >= rank_m2 - (n2 - rank_a2),
        "rank_A2M2_eq_rank_A1M1": rank_a2m2 == rank_a1m1,
        "rank_A1M1_le_dim_P1": rank_a1m1 <= rank_m1,
        "dim_P2_le_dim_P1_plus_slack": rank_m2 <= rank_m1 + slack,
    }
    if values["thm22_bound_A2"] is not None:
        checks["rank_A2_ge_thm22"] = rank_a2 >= values["thm22_bound_A2"]
    status = "holds" if all(checks.values()) else "violated"
    witness = None
    if status == "violated":
        witness = {
            "config": config_to_dict(config),
            "x": part.x, "y": part.y,
            "c1": format_scalar(c1), "c2": format_scalar(c2), "delta": format_scalar(delta),
            "A": asm.A.to_text(),
            "lines": [format_line(el.line) for el in asm.lines],
        }
    return Lemma31Report(status, [], values, checks, claim, witness)
