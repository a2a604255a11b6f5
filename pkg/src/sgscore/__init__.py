"""Scene-graph caption scoring: PAS-based parsing, synonym extension and tuple F1."""

from .annotation import AnnotatedCaption, AnnotationError, Token, read_annotations
from .graph import PHI, GraphError, SceneGraph, build_graph, extract_tuples, merge_graphs
from .kernels import BACKEND
from .lexicon import ExtendedGraph, SynonymLexicon, extend_graph, load_lexicon
from .parser import ParserMode, complete_zero_pronouns, parse_scene_graph
from .scoring import ScoreTriple, match_tuples, score_pair

__version__ = "0.1.0"

__all__ = [
    "AnnotatedCaption", "AnnotationError", "BACKEND", "ExtendedGraph", "GraphError", "PHI",
    "ParserMode", "SceneGraph", "ScoreTriple", "SynonymLexicon", "Token", "build_graph",
    "complete_zero_pronouns", "extend_graph", "extract_tuples", "load_lexicon", "match_tuples",
    "merge_graphs", "parse_scene_graph", "read_annotations", "score_pair",
]
