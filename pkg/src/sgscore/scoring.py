"""Tuple matching and the precision / recall / F1 score."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Sequence

from . import kernels
from .graph import GraphError, SceneGraph, Tuple, merge_graphs
from .lexicon import EMPTY_LEXICON, ExtendedGraph, SynonymLexicon, extend_graph

DENOMINATORS = ("original", "extended")


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f1: float
    matched: int
    cand_total: int
    ref_total: int

    @property
    def is_zero(self) -> bool:
        return self.f1 == 0.0

    def to_dict(self) -> dict:
        return asdict(self)


ZERO = ScoreTriple(0.0, 0.0, 0.0, 0, 0, 0)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _as_extended(g: SceneGraph | ExtendedGraph) -> ExtendedGraph:
    return g if isinstance(g, ExtendedGraph) else ExtendedGraph(g, g)


def compatibility(cand: ExtendedGraph, ref: ExtendedGraph) -> tuple[list[Tuple], list[Tuple], list[list[int]]]:
    """Sorted original tuples of both sides and the candidate→reference edge lists.

    Two tuples are compatible when they have the same arity and, slot by
    slot, their synonym closures intersect.
    """
    left = sorted(cand.original_tuples())
    right = sorted(ref.original_tuples())
    right_closures = [ref.slot_closures(t) for t in right]
    index: dict[tuple[int, str], list[int]] = defaultdict(list)
    for j, closures in enumerate(right_closures):
        for lemma in closures[0]:
            index[len(closures), lemma].append(j)
    adjacency = []
    for t in left:
        closures = cand.slot_closures(t)
        hits = set()
        for lemma in closures[0]:
            hits.update(index.get((len(t), lemma), ()))
        adjacency.append(sorted(
            j for j in hits
            if all(not a.isdisjoint(b) for a, b in zip(closures[1:], right_closures[j][1:]))
        ))
    return left, right, adjacency


def match_tuples(cand: SceneGraph | ExtendedGraph, ref: SceneGraph | ExtendedGraph) -> set[tuple[Tuple, Tuple]]:
    """A maximum one-to-one matching between the original tuples of two graphs."""
    left, right, adjacency = compatibility(_as_extended(cand), _as_extended(ref))
    assignment = kernels.max_matching(len(right), adjacency)
    return {(left[i], right[j]) for i, j in enumerate(assignment) if j >= 0}


def score_extended(cand: ExtendedGraph, ref: ExtendedGraph, denominator: str = "original") -> ScoreTriple:
    if denominator not in DENOMINATORS:
        raise ValueError(f"denominator must be one of {DENOMINATORS}")
    cand_total = len(cand.all_tuples() if denominator == "extended" else cand.original_tuples())
    ref_total = len(ref.original_tuples())
    if cand_total == 0 or ref_total == 0 or not cand.original_tuples():
        return ScoreTriple(0.0, 0.0, 0.0, 0, cand_total, ref_total)
    matched = len(match_tuples(cand, ref))
    precision = matched / cand_total
    recall = matched / ref_total
    return ScoreTriple(precision, recall, f1_score(precision, recall), matched, cand_total, ref_total)


def score_pair(
    cand: SceneGraph,
    refs: Sequence[SceneGraph],
    lex: SynonymLexicon = EMPTY_LEXICON,
    extension: bool = True,
    denominator: str = "original",
) -> ScoreTriple:
    """Score a candidate graph against the merged reference graphs.

    Denominators count original tuples by default; ``denominator="extended"``
    divides precision by the extended candidate tuple count instead.
    """
    if not refs:
        raise GraphError("at least one reference graph is required")
    ref = merge_graphs(refs)
    lexicon = lex if extension else EMPTY_LEXICON
    return score_extended(extend_graph(cand, lexicon), extend_graph(ref, lexicon), denominator)
