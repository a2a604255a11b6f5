"""Sentence-level n-gram baselines: BLEU-4, ROUGE-L and plain CIDEr.

Captions are token lists; the harness passes the surface forms of the
annotation tokens in order.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from . import kernels

Tokens = Sequence[str]


def ngrams(tokens: Tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def clipped_precision(cand: Tokens, refs: Sequence[Tokens], n: int) -> tuple[int, int]:
    """``(clipped matches, candidate n-gram count)`` for order ``n``."""
    counts = ngrams(cand, n)
    max_ref: Counter = Counter()
    for ref in refs:
        for g, c in ngrams(ref, n).items():
            if c > max_ref[g]:
                max_ref[g] = c
    matched = sum(min(c, max_ref[g]) for g, c in counts.items())
    return matched, sum(counts.values())


def closest_ref_length(cand_len: int, refs: Sequence[Tokens]) -> int:
    return min((abs(len(r) - cand_len), len(r)) for r in refs)[1]


def brevity_penalty(cand_len: int, ref_len: int) -> float:
    if cand_len == 0:
        return 0.0
    if cand_len > ref_len:
        return 1.0
    return math.exp(1 - ref_len / cand_len)


def bleu(cand: Tokens, refs: Sequence[Tokens], max_n: int = 4, smoothing: bool = True) -> float:
    """Sentence BLEU with add-one smoothing on orders 2 and up."""
    if not refs:
        raise ValueError("BLEU needs at least one reference")
    if not cand:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        matched, total = clipped_precision(cand, refs, n)
        if smoothing and n > 1:
            matched, total = matched + 1, total + 1
        if matched == 0 or total == 0:
            return 0.0
        log_sum += math.log(matched / total)
    bp = brevity_penalty(len(cand), closest_ref_length(len(cand), refs))
    return min(1.0, bp * math.exp(log_sum / max_n))


def _encode(*seqs: Tokens) -> list[list[int]]:
    vocab: dict[str, int] = {}
    return [[vocab.setdefault(t, len(vocab)) for t in s] for s in seqs]


def lcs(a: Tokens, b: Tokens) -> int:
    ea, eb = _encode(a, b)
    return kernels.lcs_length(ea, eb)


def rouge_l(cand: Tokens, refs: Sequence[Tokens], beta: float = 1.2) -> float:
    """LCS F-measure, best over references."""
    if not refs:
        raise ValueError("ROUGE-L needs at least one reference")
    if not cand:
        return 0.0
    best = 0.0
    for ref in refs:
        if not ref:
            continue
        common = lcs(cand, ref)
        if common == 0:
            continue
        p = common / len(cand)
        r = common / len(ref)
        f = (1 + beta ** 2) * p * r / (r + beta ** 2 * p)
        best = max(best, f)
    return best


def _tfidf(counts: Counter, df: Counter, log_n: float) -> dict:
    return {g: c * (log_n - math.log(max(1, df[g]))) for g, c in counts.items()}


def _cosine(a: dict, b: dict) -> float:
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0 or nb == 0:
        return 0.0
    dot = sum(v * b[g] for g, v in a.items() if g in b)
    return dot / (na * nb)


def document_frequencies(corpus: Sequence[tuple[Tokens, Sequence[Tokens]]], max_n: int = 4) -> list[Counter]:
    """Per order, the number of entries whose references contain each n-gram."""
    df = [Counter() for _ in range(max_n)]
    for _, refs in corpus:
        for n in range(1, max_n + 1):
            seen = set()
            for ref in refs:
                seen.update(ngrams(ref, n))
            df[n - 1].update(seen)
    return df


def cider(corpus: Sequence[tuple[Tokens, Sequence[Tokens]]], max_n: int = 4) -> list[float]:
    """Plain CIDEr (no length penalty, no clipping), one score per entry, scaled by 10."""
    if len(corpus) < 2:
        raise ValueError("CIDEr needs a corpus of at least two entries")
    df = document_frequencies(corpus, max_n)
    log_n = math.log(len(corpus))
    scores = []
    for cand, refs in corpus:
        if not refs:
            raise ValueError("CIDEr needs at least one reference per entry")
        per_order = []
        for n in range(1, max_n + 1):
            vc = _tfidf(ngrams(cand, n), df[n - 1], log_n)
            per_order.append(math.fsum(_cosine(vc, _tfidf(ngrams(r, n), df[n - 1], log_n)) for r in refs) / len(refs))
        scores.append(10.0 * sum(per_order) / max_n)
    return scores
