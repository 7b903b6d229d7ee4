"""Collinearity parameter delta of a colored configuration, and the classical
two-color test."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .config import ColoredConfig, LineRecord, enumerate_lines, format_line, line_groups
from .exact import format_scalar


@dataclass(frozen=True)
class DeltaProfile:
    """Per-point partner counts and the resulting delta.

    ``counts[v]`` is the number of same-color u != v whose line through v
    carries a point of another color. ``delta`` follows the singleton
    convention in ``singleton_vacuous``; ``delta_strict`` always counts
    singleton classes (which force it to 0).
    """

    counts: tuple[int, ...]
    fractions: tuple[Fraction, ...]
    color_minima: tuple[Fraction, ...]
    delta: Fraction
    delta_strict: Fraction
    singleton_vacuous: bool

    def to_dict(self) -> dict:
        return {
            "counts": list(self.counts),
            "fractions": [format_scalar(f) for f in self.fractions],
            "color_minima": [format_scalar(f) for f in self.color_minima],
            "delta": format_scalar(self.delta),
            "delta_strict": format_scalar(self.delta_strict),
            "singleton_vacuous": self.singleton_vacuous,
        }


def partner_counts(config: ColoredConfig, lines: list[LineRecord] | None = None) -> list[int]:
    groups = line_groups(config) if lines is None else [rec.flat for rec in lines]
    color = config.color_of()
    counts = [0] * config.m
    for flat in groups:
        per_color = Counter(color[i] for i in flat)
        if len(per_color) < 2:
            continue
        # every other color is present, so all same-color partners on this line count
        for i in flat:
            counts[i] += per_color[color[i]] - 1
    return counts


def compute_delta(config: ColoredConfig, singleton_vacuous: bool = True,
                  lines: list[LineRecord] | None = None) -> DeltaProfile:
    """Measure delta* = min over points v in V_i of c(v)/|V_i|.

    With ``singleton_vacuous`` (the default), classes of size 1 impose no
    constraint; if no class has two points, delta is reported as 0.
    """
    counts = partner_counts(config, lines)
    color = config.color_of()
    sizes = config.sizes
    fracs = tuple(Fraction(c, sizes[color[i]]) for i, c in enumerate(counts))
    minima = []
    for c in range(config.n):
        lo, hi = config.offsets()[c], config.offsets()[c + 1]
        minima.append(min(fracs[lo:hi]))
    strict = min(minima)
    big = [minima[c] for c in range(config.n) if sizes[c] >= 2]
    lenient = min(big) if big else Fraction(0)
    return DeltaProfile(
        counts=tuple(counts),
        fractions=fracs,
        color_minima=tuple(minima),
        delta=lenient if singleton_vacuous else strict,
        delta_strict=strict,
        singleton_vacuous=singleton_vacuous,
    )


def hypothesis_delta(config: ColoredConfig) -> Fraction:
    """Largest delta for which the configuration is (delta, n)-MR, reading the
    definition literally (a singleton class forces 0).

    This is the value the bound machinery checks hypotheses against: with the
    lenient singleton reading a lone point can have no triples at all, which
    breaks the column-support count behind the dimension lemma.
    """
    return compute_delta(config, singleton_vacuous=False).delta_strict


def is_mr_configuration(config: ColoredConfig) -> tuple[bool, LineRecord | None]:
    """Two-color test: every line through >= 2 points meets both colors.

    Returns ``(True, None)`` or ``(False, monochromatic_line)``.
    """
    if config.n != 2:
        raise ValueError(f"MR configuration test needs exactly 2 colors, got {config.n}")
    for rec in enumerate_lines(config):
        if len(rec.colors()) < 2:
            return False, rec
    return True, None


def mr_report(config: ColoredConfig) -> dict:
    ok, witness = is_mr_configuration(config)
    return {"is_mr": ok, "witness": None if witness is None else format_line(witness)}
