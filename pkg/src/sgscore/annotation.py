"""Annotated captions: tokens with lemma, POS, dependency and predicate-argument links.

One caption per line, as JSON::

    {"caption_id": "c1",
     "tokens": [{"i": 0, "surface": "akai", "lemma": "akai", "pos": "adjective",
                 "head": 1, "dep": "amod", "case": null, "prop_noun": false,
                 "args": []}, ...]}

``head`` is 0-based with -1 for the root. ``args`` lists ``{"case", "target"}``
links from a predicate to its arguments and is only allowed on verbs and
adjectives.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable

from .graph import PHI, GraphError, normalize_lemma

POS_TAGS = frozenset({"noun", "verb", "adjective", "adverb", "particle", "aux", "other"})
CASE_TAGS = ("ga", "wo", "ni", "to", "de", "kara", "yori", "he", "made", "deep")
PREDICATE_POS = frozenset({"verb", "adjective"})


class AnnotationError(ValueError):
    """Malformed or structurally invalid annotation document."""

    def __init__(self, message: str, line: int | None = None, path: str = ""):
        self.message = message
        self.line = line
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        super().__init__(": ".join(where + [message]))


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    lemma: str
    pos: str
    head: int
    dep: str = ""
    case: str | None = None
    prop_noun: bool = False
    args: tuple[tuple[str, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            "i": self.index,
            "surface": self.surface,
            "lemma": self.lemma,
            "pos": self.pos,
            "head": self.head,
            "dep": self.dep,
            "case": self.case,
            "prop_noun": self.prop_noun,
            "args": [{"case": c, "target": t} for c, t in self.args],
        }


@dataclass(frozen=True)
class AnnotatedCaption:
    caption_id: str
    tokens: tuple[Token, ...] = field(default_factory=tuple)

    def __post_init__(self):
        check_structure(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def children(self, index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == index]

    def to_dict(self) -> dict:
        return {"caption_id": self.caption_id, "tokens": [t.to_dict() for t in self.tokens]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


def check_structure(tokens: tuple[Token, ...]) -> None:
    """Single root, heads in range, no self-loops, no cycles. Empty captions pass."""
    n = len(tokens)
    if n == 0:
        return
    roots = []
    for pos, tok in enumerate(tokens):
        path = f"tokens[{pos}]"
        if tok.index != pos:
            raise AnnotationError(f"token index {tok.index} does not match position {pos}", path=f"{path}.i")
        if tok.head == tok.index:
            raise AnnotationError(f"token {tok.index} is its own head", path=f"{path}.head")
        if tok.head != -1 and not 0 <= tok.head < n:
            raise AnnotationError(f"head {tok.head} out of range for {n} tokens", path=f"{path}.head")
        if tok.head == -1:
            roots.append(tok.index)
        for k, (case, target) in enumerate(tok.args):
            if not 0 <= target < n or target == tok.index:
                raise AnnotationError(f"argument target {target} invalid", path=f"{path}.args[{k}].target")
    if len(roots) != 1:
        raise AnnotationError(f"expected exactly one root, found {len(roots)}", path="tokens")
    state = [0] * n  # 0 unvisited, 1 on current chain, 2 reaches root
    for start in range(n):
        chain = []
        i = start
        while i != -1 and state[i] == 0:
            state[i] = 1
            chain.append(i)
            i = tokens[i].head
        if i != -1 and state[i] == 1:
            raise AnnotationError(f"cyclic head links through token {i}", path=f"tokens[{i}].head")
        for j in chain:
            state[j] = 2


def _require(doc: dict, key: str, kind, path: str, line: int | None):
    if key not in doc:
        raise AnnotationError("missing field", line, f"{path}.{key}" if path else key)
    value = doc[key]
    bad_bool = kind is int and isinstance(value, bool)
    if not isinstance(value, kind) or bad_bool:
        raise AnnotationError(f"expected {kind.__name__}, got {type(value).__name__}", line, f"{path}.{key}" if path else key)
    return value


def _parse_token(doc, pos: int, line: int | None) -> Token:
    path = f"tokens[{pos}]"
    if not isinstance(doc, dict):
        raise AnnotationError("token must be an object", line, path)
    index = _require(doc, "i", int, path, line)
    surface = _require(doc, "surface", str, path, line)
    try:
        lemma = normalize_lemma(_require(doc, "lemma", str, path, line))
    except GraphError as exc:
        raise AnnotationError(str(exc), line, f"{path}.lemma") from None
    if lemma == PHI:
        raise AnnotationError("the zero-pronoun placeholder is not a token lemma", line, f"{path}.lemma")
    tag = _require(doc, "pos", str, path, line)
    if tag not in POS_TAGS:
        raise AnnotationError(f"unknown POS {tag!r}", line, f"{path}.pos")
    head = _require(doc, "head", int, path, line)
    dep = doc.get("dep", "")
    if not isinstance(dep, str):
        raise AnnotationError("expected str", line, f"{path}.dep")
    case = doc.get("case")
    if case is not None and case not in CASE_TAGS:
        raise AnnotationError(f"unknown case marker {case!r}", line, f"{path}.case")
    prop_noun = doc.get("prop_noun", False)
    if not isinstance(prop_noun, bool):
        raise AnnotationError("expected bool", line, f"{path}.prop_noun")
    raw_args = doc.get("args", [])
    if not isinstance(raw_args, list):
        raise AnnotationError("expected list", line, f"{path}.args")
    args = []
    for k, arg in enumerate(raw_args):
        apath = f"{path}.args[{k}]"
        if not isinstance(arg, dict):
            raise AnnotationError("argument must be an object", line, apath)
        acase = _require(arg, "case", str, apath, line)
        if acase not in CASE_TAGS:
            raise AnnotationError(f"unknown case marker {acase!r}", line, f"{apath}.case")
        args.append((acase, _require(arg, "target", int, apath, line)))
    if args and tag not in PREDICATE_POS:
        raise AnnotationError(f"arguments on a non-predicate ({tag})", line, f"{path}.args")
    return Token(index, surface, lemma, tag, head, dep, case, prop_noun, tuple(args))


def caption_from_dict(doc, line: int | None = None) -> AnnotatedCaption:
    """Validate one annotation document."""
    if not isinstance(doc, dict):
        raise AnnotationError("annotation must be a JSON object", line)
    caption_id = _require(doc, "caption_id", str, "", line)
    raw = _require(doc, "tokens", list, "", line)
    tokens = tuple(_parse_token(t, k, line) for k, t in enumerate(raw))
    try:
        return AnnotatedCaption(caption_id, tokens)
    except AnnotationError as exc:
        raise AnnotationError(exc.message, line, exc.path) from None


def read_annotations(stream: Iterable[str] | IO[str]) -> list[AnnotatedCaption]:
    """Parse line-delimited annotation documents; blank lines are skipped."""
    out = []
    for lineno, text in enumerate(stream, 1):
        if not text.strip():
            continue
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AnnotationError(f"invalid JSON ({exc.msg})", lineno) from None
        out.append(caption_from_dict(doc, lineno))
    return out


def write_annotations(captions: Iterable[AnnotatedCaption], stream: IO[str]) -> None:
    for c in captions:
        stream.write(c.to_json() + "\n")
