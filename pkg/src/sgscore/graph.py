"""Scene graphs, their tuple sets, and reference merging.

A scene graph holds three sets over lemma strings: objects, relation
triples ``(subject, relation, object)`` and attribute pairs
``(object, attribute)``. Tuples are plain Python tuples whose length tells
the variant apart: ``(obj,)``, ``(obj, attr)`` or ``(subj, rel, obj)``.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Sequence

PHI = "φ"
"""Placeholder lemma for an omitted (zero-pronoun) subject."""

Relation = tuple[str, str, str]
Attribute = tuple[str, str]
Tuple = tuple[str, ...]


class GraphError(ValueError):
    """A scene graph violates its containment or placeholder rules."""


def normalize_lemma(text: str) -> str:
    """NFC-normalize and strip a lemma; raise on an empty result."""
    if not isinstance(text, str):
        raise GraphError(f"lemma must be a string, got {type(text).__name__}")
    lemma = unicodedata.normalize("NFC", text).strip()
    if not lemma:
        raise GraphError("empty lemma")
    return lemma


@dataclass(frozen=True)
class SceneGraph:
    objects: frozenset[str] = field(default_factory=frozenset)
    relations: frozenset[Relation] = field(default_factory=frozenset)
    attributes: frozenset[Attribute] = field(default_factory=frozenset)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise :class:`GraphError` unless every containment invariant holds."""
        if PHI in self.objects:
            raise GraphError("the zero-pronoun placeholder cannot be an object")
        for subj, rel, obj in self.relations:
            if rel == PHI or obj == PHI:
                raise GraphError(f"placeholder outside the subject slot in {(subj, rel, obj)}")
            if subj != PHI and subj not in self.objects:
                raise GraphError(f"relation subject {subj!r} is not an object")
            if obj not in self.objects:
                raise GraphError(f"relation object {obj!r} is not an object")
        for obj, attr in self.attributes:
            if PHI in (obj, attr):
                raise GraphError(f"placeholder in attribute {(obj, attr)}")
            if obj not in self.objects:
                raise GraphError(f"attribute owner {obj!r} is not an object")

    @property
    def is_empty(self) -> bool:
        return not (self.objects or self.relations or self.attributes)

    def to_dict(self) -> dict:
        return {
            "objects": sorted(self.objects),
            "relations": [list(r) for r in sorted(self.relations)],
            "attributes": [list(a) for a in sorted(self.attributes)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, doc: dict) -> "SceneGraph":
        try:
            return build_graph(
                doc.get("objects", []),
                [tuple(r) for r in doc.get("relations", [])],
                [tuple(a) for a in doc.get("attributes", [])],
            )
        except (TypeError, ValueError) as exc:
            raise GraphError(f"bad graph document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "SceneGraph":
        return cls.from_dict(json.loads(text))


def build_graph(
    objects: Iterable[str] = (),
    relations: Iterable[Sequence[str]] = (),
    attributes: Iterable[Sequence[str]] = (),
) -> SceneGraph:
    """Build a deduplicated graph, adding missing relation/attribute endpoints as objects."""
    objs = set()
    for o in objects:
        o = normalize_lemma(o)
        if o == PHI:
            raise GraphError("the zero-pronoun placeholder cannot be an object")
        objs.add(o)

    rels = set()
    for triple in relations:
        if len(triple) != 3:
            raise GraphError(f"relation must have 3 slots: {triple!r}")
        subj, rel, obj = (normalize_lemma(x) for x in triple)
        if rel == PHI or obj == PHI:
            raise GraphError(f"placeholder outside the subject slot in {(subj, rel, obj)}")
        if subj != PHI:
            objs.add(subj)
        objs.add(obj)
        rels.add((subj, rel, obj))

    attrs = set()
    for pair in attributes:
        if len(pair) != 2:
            raise GraphError(f"attribute must have 2 slots: {pair!r}")
        obj, attr = (normalize_lemma(x) for x in pair)
        if PHI in (obj, attr):
            raise GraphError(f"placeholder in attribute {(obj, attr)}")
        objs.add(obj)
        attrs.add((obj, attr))

    return SceneGraph(frozenset(objs), frozenset(rels), frozenset(attrs))


def extract_tuples(g: SceneGraph) -> frozenset[Tuple]:
    """The tuple set O ∪ E ∪ K; relations with an unresolved placeholder subject are left out."""
    out: set[Tuple] = {(o,) for o in g.objects}
    out.update(r for r in g.relations if r[0] != PHI)
    out.update(g.attributes)
    return frozenset(out)


def merge_graphs(graphs: Sequence[SceneGraph]) -> SceneGraph:
    """Set union of several graphs."""
    graphs = list(graphs)
    if not graphs:
        raise GraphError("cannot merge an empty list of graphs")
    if len(graphs) == 1:
        return graphs[0]
    return SceneGraph(
        frozenset().union(*(g.objects for g in graphs)),
        frozenset().union(*(g.relations for g in graphs)),
        frozenset().union(*(g.attributes for g in graphs)),
    )
