"""Correlation coefficients, inter-annotator agreement and score bookkeeping."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.stats import rankdata

from . import kernels

HUMAN_LEVELS = (1, 2, 3, 4, 5)


class UndefinedCorrelation(ValueError):
    """The coefficient is undefined (constant series or too few points)."""


def _pair(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"series must be 1-D and of equal length, got {a.shape} and {b.shape}")
    if len(a) < 2:
        raise UndefinedCorrelation("need at least two points")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise ValueError("series contain non-finite values")
    return a, b


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    a, b = _pair(x, y)
    da = a - a.mean()
    db = b - b.mean()
    sa = float(np.dot(da, da))
    sb = float(np.dot(db, db))
    if sa == 0 or sb == 0:
        raise UndefinedCorrelation("zero variance")
    r = float(np.dot(da, db)) / math.sqrt(sa * sb)
    return max(-1.0, min(1.0, r))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of average ranks."""
    a, b = _pair(x, y)
    return pearson(rankdata(a), rankdata(b))


def kendall(x: Sequence[float], y: Sequence[float]) -> float:
    """Kendall tau-b by O(n^2) pair enumeration."""
    a, b = _pair(x, y)
    concordant, discordant, tied_x, tied_y = kernels.kendall_counts(a.tolist(), b.tolist())
    n0 = len(a) * (len(a) - 1) // 2
    denom = (n0 - tied_x) * (n0 - tied_y)
    if denom == 0:
        raise UndefinedCorrelation("a series is constant")
    return (concordant - discordant) / math.sqrt(denom)


COEFFICIENTS: dict[str, Callable[[Sequence[float], Sequence[float]], float]] = {
    "pearson": pearson,
    "spearman": spearman,
    "kendall": kendall,
}


def correlate(x, y, method: str) -> float | None:
    """Coefficient by name, or ``None`` when undefined."""
    try:
        return COEFFICIENTS[method](x, y)
    except UndefinedCorrelation:
        return None


@dataclass(frozen=True)
class PairedScores:
    metric: tuple[float, ...]
    human: tuple[float, ...]

    def __post_init__(self):
        if len(self.metric) != len(self.human):
            raise ValueError("metric and human series differ in length")
        if len(self.metric) < 2:
            raise ValueError("need at least two paired scores")
        if any(not 1 <= h <= 5 for h in self.human):
            raise ValueError("human scores must lie in [1, 5]")

    @classmethod
    def of(cls, metric, human) -> "PairedScores":
        return cls(tuple(float(m) for m in metric), tuple(float(h) for h in human))

    def correlations(self) -> dict[str, float | None]:
        return {name: correlate(self.metric, self.human, name) for name in COEFFICIENTS}


@dataclass(frozen=True)
class EvaluatorMatrix:
    """Per-evaluator sparse score vectors: ``rows[evaluator][caption_id] = score``."""

    rows: Mapping[str, Mapping[str, int]]

    def __post_init__(self):
        for ev, row in self.rows.items():
            for cid, s in row.items():
                if s not in HUMAN_LEVELS or isinstance(s, bool):
                    raise ValueError(f"evaluator {ev!r} gave {s!r} to {cid!r}; scores must be 1..5")

    @classmethod
    def from_triples(cls, triples) -> "EvaluatorMatrix":
        """Build from ``(evaluator, caption_id, score)``; a repeated pair keeps the last score."""
        rows: dict[str, dict[str, int]] = {}
        for ev, cid, s in triples:
            rows.setdefault(ev, {})[cid] = s
        return cls(rows)


@dataclass(frozen=True)
class AgreementResult:
    value: float
    pairs_used: int
    pairs_skipped: int


def r_human(m: EvaluatorMatrix, corr: str = "pearson") -> AgreementResult:
    """Mean pairwise correlation between evaluators over the captions both rated.

    Pairs whose coefficient is undefined (fewer than two shared captions, or
    a constant vector) are skipped and counted.
    """
    fn = COEFFICIENTS[corr]
    values = []
    skipped = 0
    for ev_a, ev_b in itertools.combinations(sorted(m.rows), 2):
        row_a, row_b = m.rows[ev_a], m.rows[ev_b]
        shared = sorted(set(row_a) & set(row_b))
        try:
            values.append(fn([row_a[c] for c in shared], [row_b[c] for c in shared]))
        except UndefinedCorrelation:
            skipped += 1
    if not values:
        raise UndefinedCorrelation("no evaluator pair has a defined correlation")
    return AgreementResult(math.fsum(values) / len(values), len(values), skipped)


def quantile_threshold(scores: Sequence[float], fraction: float) -> float:
    """Smallest score such that at least ceil(fraction * n) scores reach it."""
    if not scores:
        raise ValueError("empty score list")
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    ranked = sorted(scores, reverse=True)
    # round first so that e.g. 0.3 * 10 is 3, not 3.0000000000000004
    k = max(1, math.ceil(round(fraction * len(ranked), 9)))
    return ranked[k - 1]


class FailureCategory(str, enum.Enum):
    GRANULARITY = "granularity"
    FOCUS = "focus"
    PARTIAL_MORPHEME = "partial_morpheme"
    ERRONEOUS_HUMAN = "erroneous_human"
    OTHER = "other"


@dataclass
class FailureCase:
    index: int
    human: float
    metric: float
    discrepancy: float
    caption_id: str | None = None
    category: FailureCategory | None = None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "caption_id": self.caption_id,
            "human": self.human,
            "metric": self.metric,
            "discrepancy": self.discrepancy,
            "category": None if self.category is None else self.category.value,
        }


def failure_cases(metric: Sequence[float], human: Sequence[float], theta: float = 1.0) -> list[FailureCase]:
    """Indices whose max-normalized human and metric scores differ by at least ``theta``."""
    if len(metric) != len(human):
        raise ValueError("metric and human series differ in length")
    if not metric:
        return []
    max_m = max(metric)
    max_h = max(human)
    if max_m <= 0 or max_h <= 0:
        raise ValueError("cannot normalize a series whose maximum is not positive")
    out = []
    for i, (s_j, s_h) in enumerate(zip(metric, human)):
        gap = abs(s_h / max_h - s_j / max_m)
        if gap >= theta:
            out.append(FailureCase(i, s_h, s_j, gap))
    return out


@dataclass(frozen=True)
class ScoreDistribution:
    counts: Mapping[int, int] = field(default_factory=lambda: {k: 0 for k in HUMAN_LEVELS})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict[int, int]:
        return {k: v for k, v in self.counts.items() if v}

    def rows(self) -> list[tuple[int, int]]:
        return [(k, self.counts[k]) for k in sorted(self.counts, reverse=True)]


def score_distribution(scores: Sequence[int]) -> ScoreDistribution:
    counts = {k: 0 for k in HUMAN_LEVELS}
    for s in scores:
        if s not in counts or isinstance(s, bool):
            raise ValueError(f"score {s!r} outside 1..5")
        counts[s] += 1
    return ScoreDistribution(counts)


def distribution_from_counts(counts: Mapping[int, int]) -> ScoreDistribution:
    """Build a distribution from already tallied per-level counts."""
    out = {k: 0 for k in HUMAN_LEVELS}
    for k, v in counts.items():
        if k not in out or v < 0:
            raise ValueError(f"bad count {k!r}: {v!r}")
        out[k] = int(v)
    return ScoreDistribution(out)
