"""Rule-based scene-graph parser over annotated captions.

``ParserMode.PAS`` reads predicate-argument frames (case-marked arguments,
with case-marked dependents as a fallback), applies the noun-phrase
patterns and then fills zero-pronoun subjects. ``ParserMode.UD`` is the
weaker dependency-label extractor used as the ablation baseline.

Pattern table (PAS mode):

====  ==============================================================
1     ga argument becomes the relation subject
2     wo argument becomes an object under the bare predicate label
3-9   ni, to, de, kara, yori, he, made arguments: label ``pred+case``
10    deep-case argument: label ``pred+deep``
11    adjective modifying a noun: attribute ``(noun, adjective)``
12    ``A no B``: attribute ``(B, A)`` if A is adjective-like or a
      property noun, else relation ``(B, no, A)``
13    clause modifying a noun: the noun fills the predicate's empty
      ga slot (or its empty wo slot when ga is taken)
====  ==============================================================

A verb with a subject but no other argument yields the attribute
``(subject, verb)``; an adjective predicate yields ``(subject, adjective)``.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field

from .annotation import AnnotatedCaption, Token
from .graph import PHI, SceneGraph, build_graph

NO_PARTICLES = frozenset({"no", "の"})
SUBJECT_LABELS = frozenset({"nsubj", "nsubj:pass", "csubj", "csubj:pass"})


class ParserMode(str, enum.Enum):
    PAS = "pas"
    UD = "ud"


@dataclass
class Frame:
    """Arguments of one predicate token, as token indices."""

    predicate: int
    subject: int | None = None
    arguments: list[tuple[str, int]] = field(default_factory=list)

    def targets(self) -> set[int]:
        out = {t for _, t in self.arguments}
        if self.subject is not None:
            out.add(self.subject)
        return out

    def has_case(self, case: str) -> bool:
        return any(c == case for c, _ in self.arguments)


@dataclass
class GraphDraft:
    """Mutable graph under construction; :meth:`freeze` turns it into a SceneGraph."""

    caption: AnnotatedCaption
    frames: dict[int, Frame] = field(default_factory=dict)
    relations: set[tuple[str, str, str]] = field(default_factory=set)
    attributes: set[tuple[str, str]] = field(default_factory=set)
    consumed: set[int] = field(default_factory=set)

    def freeze(self) -> SceneGraph:
        tokens = self.caption.tokens
        relations = set(self.relations)
        attributes = set(self.attributes)
        for p in sorted(self.frames):
            frame = self.frames[p]
            pred = tokens[p]
            subj = tokens[frame.subject].lemma if frame.subject is not None else PHI
            if pred.pos == "adjective" and subj != PHI:
                attributes.add((subj, pred.lemma))
            elif not frame.arguments and subj != PHI:
                attributes.add((subj, pred.lemma))
            for case, target in frame.arguments:
                label = pred.lemma if case == "wo" else f"{pred.lemma}+{case}"
                relations.add((subj, label, tokens[target].lemma))
        objects = [t.lemma for t in tokens if t.pos == "noun" and t.index not in self.consumed]
        return build_graph(objects, relations, attributes)


def _particles(c: AnnotatedCaption, index: int) -> set[str]:
    return {t.lemma for t in c.children(index) if t.pos == "particle"}


def _is_noun(c: AnnotatedCaption, index: int) -> bool:
    return 0 <= index < len(c.tokens) and c.tokens[index].pos == "noun"


def _pas_frame(c: AnnotatedCaption, pred: Token) -> Frame:
    frame = Frame(pred.index)
    for case, target in pred.args:
        if not _is_noun(c, target) or target in frame.targets():
            continue
        if case == "ga":
            if frame.subject is None:
                frame.subject = target
        else:
            frame.arguments.append((case, target))
    # case-marked dependents fill roles the PAS links did not cover
    for child in c.children(pred.index):
        if child.case is None or child.pos != "noun" or child.index in frame.targets():
            continue
        if child.case == "ga":
            if frame.subject is None:
                frame.subject = child.index
        else:
            frame.arguments.append((child.case, child.index))
    return frame


def apply_case_rules(c: AnnotatedCaption, g: GraphDraft) -> GraphDraft:
    """Patterns 1-10: one frame per predicate from its case-marked arguments."""
    for tok in c.tokens:
        if tok.pos in ("verb", "adjective"):
            g.frames[tok.index] = _pas_frame(c, tok)
    return g


def apply_noun_patterns(c: AnnotatedCaption, g: GraphDraft) -> GraphDraft:
    """Patterns 11-13: adjectival modifiers, ``A no B``, clausal noun modifiers."""
    tokens = c.tokens
    for tok in tokens:
        if not _is_noun(c, tok.head):
            continue
        head = tokens[tok.head]
        frame = g.frames.get(tok.index)
        if NO_PARTICLES & _particles(c, tok.index) and tok.pos in ("noun", "adjective"):
            if tok.pos == "adjective" or tok.prop_noun:
                g.attributes.add((head.lemma, tok.lemma))
                g.consumed.add(tok.index)
                g.frames.pop(tok.index, None)
            else:
                g.relations.add((head.lemma, "no", tok.lemma))
        elif tok.pos == "adjective":
            if frame is None or frame.subject is None:
                g.attributes.add((head.lemma, tok.lemma))
                g.frames.pop(tok.index, None)
        elif tok.pos == "verb" and frame is not None and head.index not in frame.targets():
            if frame.subject is None:
                frame.subject = head.index
            elif not frame.has_case("wo"):
                frame.arguments.append(("wo", head.index))
    return g


def complete_zero_pronouns(g: SceneGraph) -> SceneGraph:
    """Replace each ``(φ, r, o)`` by ``(s, r, o)`` for every non-placeholder subject s already pointing at o.

    Relations without such a donor keep their placeholder.
    """
    donors: dict[str, set[str]] = defaultdict(set)
    for subj, _, obj in g.relations:
        if subj != PHI:
            donors[obj].add(subj)
    if not any(r[0] == PHI and donors.get(r[2]) for r in g.relations):
        return g
    relations = set()
    for subj, rel, obj in g.relations:
        if subj == PHI and donors.get(obj):
            relations.update((d, rel, obj) for d in donors[obj])
        else:
            relations.add((subj, rel, obj))
    return SceneGraph(g.objects, frozenset(relations), g.attributes)


def _parse_ud(c: AnnotatedCaption) -> SceneGraph:
    tokens = c.tokens
    relations = set()
    attributes = set()
    for tok in tokens:
        if tok.pos == "adjective" and _is_noun(c, tok.head):
            attributes.add((tokens[tok.head].lemma, tok.lemma))
        if tok.pos != "verb":
            continue
        nouns = [ch for ch in c.children(tok.index) if ch.pos == "noun"]
        subject = next((ch for ch in nouns if ch.dep in SUBJECT_LABELS), None)
        others = [ch for ch in nouns if ch is not subject]
        subj = subject.lemma if subject is not None else PHI
        if not others and subject is not None:
            attributes.add((subj, tok.lemma))
        for ch in others:
            label = tok.lemma if ch.dep == "obj" else f"{tok.lemma}+{ch.case or ch.dep}"
            relations.add((subj, label, ch.lemma))
    objects = [t.lemma for t in tokens if t.pos == "noun"]
    return build_graph(objects, relations, attributes)


def parse_scene_graph(c: AnnotatedCaption, mode: ParserMode | str = ParserMode.PAS) -> SceneGraph:
    mode = ParserMode(mode)
    if mode is ParserMode.UD:
        return _parse_ud(c)
    draft = GraphDraft(c)
    apply_case_rules(c, draft)
    apply_noun_patterns(c, draft)
    return complete_zero_pronouns(draft.freeze())
