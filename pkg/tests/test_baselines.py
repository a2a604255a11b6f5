import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgscore.baselines import bleu, brevity_penalty, cider, clipped_precision, closest_ref_length, lcs, rouge_l

WORDS = st.lists(st.sampled_from("abcde"), min_size=1, max_size=8)


def test_bleu_identity():
    s = "a b c d e".split()
    assert bleu(s, [s], smoothing=False) == 1.0
    assert bleu(s, [s]) == 1.0


def test_clipped_unigram_precision():
    assert clipped_precision("the the the the".split(), ["the cat".split()], 1) == (1, 4)


def test_brevity_penalty():
    assert closest_ref_length(4, ["a b c d e f".split()]) == 6
    assert brevity_penalty(4, 6) == pytest.approx(math.exp(-0.5))
    assert brevity_penalty(6, 4) == 1.0
    cand = "a b c d".split()
    ref = "a b c d e f".split()
    assert bleu(cand, [ref], smoothing=False) == pytest.approx(math.exp(-0.5))


def test_bleu_smoothing_hand_case():
    # unigrams 3/3; bigrams (1+1)/(2+1); trigrams (0+1)/(1+1); no 4-grams: (0+1)/(0+1)
    cand, ref = "a b c".split(), "a b d c".split()
    expected = math.exp(1 - 4 / 3) * (1 * 2 / 3 * 1 / 2 * 1) ** 0.25
    assert bleu(cand, [ref]) == pytest.approx(expected)


def test_bleu_edges():
    assert bleu([], [["a"]]) == 0.0
    assert bleu(["a"], [["a"]], smoothing=False) == 0.0
    with pytest.raises(ValueError):
        bleu(["a"], [])


def test_rouge_l():
    assert lcs(list("abcd"), list("acbd")) == 3
    assert rouge_l(list("abcd"), [list("acbd")]) == pytest.approx(0.75)
    assert rouge_l(list("abcd"), [list("abcd")]) == pytest.approx(1.0)
    assert rouge_l(list("ab"), [list("cd")]) == 0.0
    assert rouge_l([], [list("ab")]) == 0.0
    assert rouge_l(list("abcd"), [list("xy"), list("acbd")]) == pytest.approx(0.75)


def test_rouge_beta():
    # P = 1, R = 1/2
    p, r, beta = 1.0, 0.5, 1.2
    expected = (1 + beta ** 2) * p * r / (r + beta ** 2 * p)
    assert rouge_l(list("ab"), [list("abcd")]) == pytest.approx(expected)
    assert rouge_l(list("ab"), [list("abcd")], beta=1.0) == pytest.approx(2 / 3)


def test_cider_identity_in_unique_corpus():
    corpus = [("a b c d".split(), ["a b c d".split()]), ("e f g h".split(), ["e f g h".split()])]
    assert cider(corpus) == pytest.approx([10.0, 10.0], abs=1e-9)


def test_cider_two_entry_hand_case():
    # every reference n-gram occurs in one entry, so every idf is log 2;
    # entry 2 shares one of two unigrams with its one-word reference and no bigram
    corpus = [("a b".split(), ["a b".split()]), ("c d".split(), ["d".split()])]
    first, second = cider(corpus)
    assert first == pytest.approx(10 * (1 + 1 + 0 + 0) / 4)
    assert second == pytest.approx(10 * (1 / math.sqrt(2)) / 4)


def test_cider_disjoint_and_errors():
    corpus = [("a b".split(), ["c d".split()]), ("e".split(), ["f".split()])]
    assert cider(corpus) == [0.0, 0.0]
    with pytest.raises(ValueError):
        cider(corpus[:1])


@settings(max_examples=200, deadline=None)
@given(WORDS, st.lists(WORDS, min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_bounds_and_reference_permutation(cand, refs, rnd):
    shuffled = list(refs)
    rnd.shuffle(shuffled)
    b = bleu(cand, refs)
    r = rouge_l(cand, refs)
    assert 0.0 <= b <= 1.0 and 0.0 <= r <= 1.0
    assert bleu(cand, shuffled) == b
    assert rouge_l(cand, shuffled) == r


def test_cider_bounds_and_permutation():
    rng = random.Random(4)
    words = list("abcdefg")
    for _ in range(50):
        corpus = [([rng.choice(words) for _ in range(rng.randint(1, 6))],
                   [[rng.choice(words) for _ in range(rng.randint(1, 6))] for _ in range(rng.randint(1, 4))])
                  for _ in range(rng.randint(2, 5))]
        scores = cider(corpus)
        assert all(-1e-9 <= s <= 10 + 1e-9 for s in scores)
        permuted = [(c, list(reversed(refs))) for c, refs in corpus]
        assert cider(permuted) == scores
