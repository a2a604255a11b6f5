"""Convert external analyzer output (CoNLL-U) into annotated captions.

Dependency analyzers with CoNLL-U output (e.g. GiNZA) can feed the parser
directly. Predicate-argument information, if the analyzer provides it, is
read from the MISC column::

    Case=wo|Args=ga:1,wo:3|PropNoun=Yes

``Args`` targets use CoNLL-U word ids (1-based). Without ``Case``, the case
marker of a word is taken from a dependent particle (deprel ``case``) whose
lemma is a known case particle.
"""

from __future__ import annotations

import shlex
import subprocess
from typing import Iterable, Sequence

from .annotation import CASE_TAGS, AnnotatedCaption, AnnotationError, Token
from .graph import normalize_lemma

UPOS_MAP = {
    "NOUN": "noun", "PROPN": "noun", "PRON": "noun", "NUM": "noun",
    "VERB": "verb",
    "ADJ": "adjective",
    "ADV": "adverb",
    "ADP": "particle", "PART": "particle", "SCONJ": "particle", "CCONJ": "particle",
    "AUX": "aux",
}

PARTICLE_CASES = {
    "が": "ga", "を": "wo", "に": "ni", "と": "to", "で": "de",
    "から": "kara", "より": "yori", "へ": "he", "まで": "made",
    **{c: c for c in CASE_TAGS if c != "deep"},
    "o": "wo", "e": "he",
}


class AnalyzerError(RuntimeError):
    pass


def _misc(field: str) -> dict[str, str]:
    if field in ("", "_"):
        return {}
    out = {}
    for item in field.split("|"):
        key, sep, value = item.partition("=")
        if sep:
            out[key] = value
    return out


def _sentence(rows: list[list[str]], caption_id: str, first_line: int) -> AnnotatedCaption:
    ids = {r[0]: k for k, r in enumerate(rows)}
    heads = []
    for k, r in enumerate(rows):
        head = r[6]
        if head == "0":
            heads.append(-1)
        elif head in ids:
            heads.append(ids[head])
        else:
            raise AnnotationError(f"head {head!r} is not a word id", first_line + k, f"tokens[{k}].head")
    cases: dict[int, str] = {}
    for k, r in enumerate(rows):
        if r[7].split(":")[0] == "case" and heads[k] >= 0 and r[2] in PARTICLE_CASES:
            cases.setdefault(heads[k], PARTICLE_CASES[r[2]])
    tokens = []
    for k, r in enumerate(rows):
        misc = _misc(r[9])
        pos = UPOS_MAP.get(r[3], "other")
        case = misc.get("Case", cases.get(k))
        if case is not None and case not in CASE_TAGS:
            case = PARTICLE_CASES.get(case)
        args = []
        if pos in ("verb", "adjective"):
            for item in filter(None, misc.get("Args", "").split(",")):
                acase, _, target = item.partition(":")
                acase = PARTICLE_CASES.get(acase, acase)
                if acase in CASE_TAGS and target in ids:
                    args.append((acase, ids[target]))
        lemma = r[2] if r[2] not in ("", "_") else r[1]
        tokens.append(Token(k, r[1], normalize_lemma(lemma), pos, heads[k], r[7], case,
                            misc.get("PropNoun", "").lower() in ("yes", "true", "1"), tuple(args)))
    try:
        return AnnotatedCaption(caption_id, tuple(tokens))
    except AnnotationError as exc:
        raise AnnotationError(exc.message, first_line, exc.path) from None


def captions_from_conllu(lines: Iterable[str], id_prefix: str = "s") -> list[AnnotatedCaption]:
    out = []
    rows: list[list[str]] = []
    sent_id = None
    start = 1
    for lineno, raw in enumerate(list(lines) + [""], 1):
        text = raw.rstrip("\r\n")
        if not text.strip():
            if rows:
                out.append(_sentence(rows, sent_id or f"{id_prefix}{len(out) + 1}", start))
            rows, sent_id = [], None
            continue
        if text.startswith("#"):
            key, sep, value = text[1:].partition("=")
            if sep and key.strip() == "sent_id":
                sent_id = value.strip()
            continue
        cols = text.split("\t")
        if len(cols) != 10:
            raise AnnotationError(f"expected 10 tab-separated columns, got {len(cols)}", lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue
        if not rows:
            start = lineno
        rows.append(cols)
    return out


def run_analyzer(cmd: str | Sequence[str], texts: Sequence[str], timeout: float | None = None) -> list[AnnotatedCaption]:
    """Pipe raw captions (one per line) through ``cmd`` and read its CoNLL-U output."""
    argv = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
    try:
        proc = subprocess.run(argv, input="".join(t.rstrip("\n") + "\n" for t in texts),
                              capture_output=True, text=True, timeout=timeout, check=False)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise AnalyzerError(f"could not run analyzer {argv[0]!r}: {exc}") from exc
    if proc.returncode != 0:
        raise AnalyzerError(f"analyzer exited with status {proc.returncode}: {proc.stderr.strip()[:500]}")
    return captions_from_conllu(proc.stdout.splitlines())
