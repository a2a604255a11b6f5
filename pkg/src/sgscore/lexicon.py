"""Synonym lexicon and synonym-based graph extension."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import IO, Iterable, Mapping

from .graph import PHI, GraphError, SceneGraph, Tuple, extract_tuples, normalize_lemma

ORIGINAL = "original"
DERIVED = "derived"


class LexiconError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SynonymLexicon:
    """Map from a lemma to its synonyms. A lemma never lists itself."""

    entries: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        for lemma, syns in self.entries.items():
            if lemma in syns:
                raise LexiconError(f"{lemma!r} lists itself as a synonym")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Iterable[str]]) -> "SynonymLexicon":
        entries: dict[str, set[str]] = {}
        for lemma, syns in mapping.items():
            _add(entries, normalize_lemma(lemma), syns)
        return cls({k: frozenset(v) for k, v in entries.items()})

    @classmethod
    def from_synsets(cls, synsets: Iterable[Iterable[str]]) -> "SynonymLexicon":
        """Symmetric lexicon where every member of a synset lists all the others.

        Convenience for converting WordNet-style synset dumps.
        """
        entries: dict[str, set[str]] = {}
        for members in synsets:
            members = {normalize_lemma(m) for m in members}
            for m in members:
                entries.setdefault(m, set()).update(members - {m})
        return cls({k: frozenset(v) for k, v in entries.items() if v})

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def synonyms(self, lemma: str) -> frozenset[str]:
        return self.entries.get(lemma, frozenset())

    def closure(self, lemma: str) -> frozenset[str]:
        """The lemma together with its direct synonyms (no chaining)."""
        return self.entries.get(lemma, frozenset()) | {lemma}

    def dump(self, stream: IO[str]) -> None:
        for lemma in sorted(self.entries):
            stream.write(f"{lemma}\t{','.join(sorted(self.entries[lemma]))}\n")


EMPTY_LEXICON = SynonymLexicon()


def _add(entries: dict[str, set[str]], lemma: str, syns: Iterable[str]) -> None:
    bucket = entries.setdefault(lemma, set())
    for s in syns:
        s = normalize_lemma(s)
        if s != lemma:
            bucket.add(s)


def load_lexicon(stream: Iterable[str] | IO[str]) -> SynonymLexicon:
    """Read ``lemma<TAB>syn1,syn2,...`` lines; ``#`` lines and blank lines are skipped."""
    entries: dict[str, set[str]] = {}
    for lineno, raw in enumerate(stream, 1):
        text = raw.rstrip("\r\n")
        if not text.strip() or text.lstrip().startswith("#"):
            continue
        if "\t" not in text:
            raise LexiconError("expected lemma<TAB>synonyms", lineno)
        head, _, tail = text.partition("\t")
        try:
            lemma = normalize_lemma(head)
            _add(entries, lemma, [s for s in tail.split(",") if s.strip()])
        except GraphError as exc:
            raise LexiconError(str(exc), lineno) from None
        if lemma == PHI:
            raise LexiconError("the zero-pronoun placeholder cannot have synonyms", lineno)
    return SynonymLexicon({k: frozenset(v) for k, v in entries.items()})


@dataclass(frozen=True)
class ExtendedGraph:
    """A scene graph plus its synonym-derived tuples.

    ``graph`` is the full extended graph, ``original`` the graph it was
    built from. Matching only ever pairs original tuples; ``lexicon`` supplies
    the per-slot synonym closures that decide compatibility.
    """

    original: SceneGraph
    graph: SceneGraph
    lexicon: SynonymLexicon = EMPTY_LEXICON

    def original_tuples(self) -> frozenset[Tuple]:
        return extract_tuples(self.original)

    def all_tuples(self) -> frozenset[Tuple]:
        return extract_tuples(self.graph)

    def derived_tuples(self) -> frozenset[Tuple]:
        return self.all_tuples() - self.original_tuples()

    def flag(self, t: Tuple) -> str:
        if t in self.original_tuples():
            return ORIGINAL
        if t in self.all_tuples():
            return DERIVED
        raise KeyError(t)

    def flags(self) -> dict[Tuple, str]:
        orig = self.original_tuples()
        return {t: ORIGINAL if t in orig else DERIVED for t in self.all_tuples()}

    def slot_closures(self, t: Tuple) -> tuple[frozenset[str], ...]:
        return tuple(self.lexicon.closure(x) for x in t)


def extend_graph(g: SceneGraph | ExtendedGraph, lex: SynonymLexicon) -> ExtendedGraph:
    """Add every one-step synonym variant of each object, relation and attribute.

    An already-extended graph is re-extended from its original subgraph, so
    synonyms of synonyms are never chained.
    """
    base = g.original if isinstance(g, ExtendedGraph) else g
    if not lex:
        return ExtendedGraph(base, base, lex)
    objects = set(base.objects)
    for o in base.objects:
        objects |= lex.synonyms(o)
    relations = set(base.relations)
    for subj, rel, obj in base.relations:
        # a placeholder subject gets no synonyms
        subjects = lex.closure(subj) if subj != PHI else {PHI}
        relations.update(product(subjects, lex.closure(rel), lex.closure(obj)))
        objects |= subjects - {PHI}
    attributes = set(base.attributes)
    for obj, attr in base.attributes:
        attributes.update(product(lex.closure(obj), lex.closure(attr)))
    extended = SceneGraph(frozenset(objects), frozenset(relations), frozenset(attributes))
    return ExtendedGraph(base, extended, lex)
