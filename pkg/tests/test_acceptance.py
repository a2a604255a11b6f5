"""Acceptance criteria. Each test carries a ``criterion`` label; the terminal
summary prints one PASS/FAIL line per criterion."""

import random
import time

import pytest

from sgscore.baselines import bleu, cider, rouge_l
from sgscore.graph import PHI, build_graph, extract_tuples
from sgscore.harness import run_ablation, run_batch
from sgscore.lexicon import extend_graph
from sgscore.parser import ParserMode, complete_zero_pronouns, parse_scene_graph
from sgscore.scoring import match_tuples, score_pair
from sgscore.stats import distribution_from_counts, kendall, pearson, spearman
from sgscore.synthetic import demo_lexicon, make_dataset, random_caption, random_graph, random_lexicon

import oracles

pytestmark = pytest.mark.acceptance


@pytest.mark.criterion("identity: F1 = 1 for 100+ captions, both parsers, with and without lexicon, < 5 s")
def test_identity_suite():
    rng = random.Random(0)
    captions = [random_caption(rng, f"c{k}") for k in range(120)]
    lexicons = [None, demo_lexicon()]
    start = time.perf_counter()
    checked = 0
    for c in captions:
        for mode in ParserMode:
            g = parse_scene_graph(c, mode)
            assert not g.is_empty
            for lex in lexicons:
                s = score_pair(g, [g]) if lex is None else score_pair(g, [g], lex)
                assert s.f1 == 1.0, (c.caption_id, mode, s)
                checked += 1
    assert time.perf_counter() - start < 5.0
    assert checked == 120 * 2 * 2


@pytest.mark.criterion("extension monotonicity: zero violations over 1000 random instances")
def test_extension_monotonicity():
    rng = random.Random(1)
    violations = 0
    for _ in range(1000):
        cand = random_graph(rng, max_tuples=8)
        refs = [random_graph(rng, max_tuples=8) for _ in range(rng.randint(1, 3))]
        lex = random_lexicon(rng, density=rng.choice((0.1, 0.3, 0.6)))
        if score_pair(cand, refs, lex, extension=True).f1 < score_pair(cand, refs, lex, extension=False).f1:
            violations += 1
    assert violations == 0


@pytest.mark.criterion("matching oracle: equals exhaustive maximum matching on 500+ instances, <= 8 tuples per side")
def test_matching_oracle():
    rng = random.Random(2)
    for _ in range(600):
        cand = random_graph(rng, max_tuples=8, phi_rate=0.2)
        ref = random_graph(rng, max_tuples=8, phi_rate=0.2)
        lex = random_lexicon(rng, density=rng.choice((0.0, 0.2, 0.5)))
        ct, rt = sorted(extract_tuples(cand)), sorted(extract_tuples(ref))
        assert len(ct) <= 8 and len(rt) <= 8
        got = match_tuples(extend_graph(cand, lex), extend_graph(ref, lex))
        want = oracles.max_matching_size(ct, rt, lambda t, u: oracles.compatible(t, u, lex))
        assert len(got) == want


@pytest.mark.criterion("zero-pronoun completion: fixture plus idempotence on 1000 random placeholder graphs")
def test_zero_pronoun_completion():
    g = build_graph([], [(PHI, "ride", "skateboard"), ("boy", "own", "skateboard")], [])
    out = complete_zero_pronouns(g)
    assert ("boy", "ride", "skateboard") in out.relations
    assert out.relations == {("boy", "ride", "skateboard"), ("boy", "own", "skateboard")}
    rng = random.Random(3)
    checked = completed = 0
    while checked < 1000:
        g = random_graph(rng, max_tuples=8, phi_rate=0.5)
        if not any(r[0] == PHI for r in g.relations):
            continue
        once = complete_zero_pronouns(g)
        assert complete_zero_pronouns(once) == once
        completed += once != g
        checked += 1
    assert completed > 0


@pytest.mark.criterion("correlation oracles: within 1e-12 on 1000 tied and untied vectors; kendall exact 1/3")
def test_correlation_oracles():
    assert kendall([1, 2, 3], [1, 3, 2]) == 1 / 3
    rng = random.Random(4)
    done = 0
    while done < 1000:
        n = rng.randint(3, 30)
        if done % 2:
            x = [rng.randint(1, 5) for _ in range(n)]
            y = [rng.randint(1, 5) for _ in range(n)]
        else:
            x = [rng.random() for _ in range(n)]
            y = [rng.random() for _ in range(n)]
        if len(set(x)) < 2 or len(set(y)) < 2:
            continue
        assert abs(pearson(x, y) - oracles.pearson(x, y)) <= 1e-12
        assert abs(spearman(x, y) - oracles.spearman(x, y)) <= 1e-12
        assert abs(kendall(x, y) - oracles.kendall_tau_b(x, y)) <= 1e-12
        done += 1


@pytest.mark.criterion("baseline fixtures: BLEU identity 1.0, ROUGE-L 0.75, CIDEr identity 10 +- 1e-9")
def test_baseline_fixtures():
    s = "a b c d e".split()
    assert bleu(s, [s], smoothing=False) == 1.0
    assert rouge_l(list("abcd"), [list("acbd")]) == pytest.approx(0.75, abs=1e-12)
    corpus = [("a b c d".split(), ["a b c d".split()]), ("e f g h".split(), ["e f g h".split()])]
    assert abs(cider(corpus)[0] - 10.0) <= 1e-9


@pytest.mark.criterion("score distribution bookkeeping: five-level counts total 103,170")
def test_distribution_total():
    d = distribution_from_counts({5: 31809, 4: 21857, 3: 22513, 2: 12873, 1: 14118})
    assert d.total == 103170
    assert [c for _, c in d.rows()] == [31809, 21857, 22513, 12873, 14118]


@pytest.mark.criterion("ablation: M(iv) <= M(iii) <= M(i) and correlation(iv) >= correlation(i) on 200 captions, < 30 s")
def test_ablation_ordering():
    start = time.perf_counter()
    table = run_ablation(make_dataset(200, seed=1), demo_lexicon())
    elapsed = time.perf_counter() - start
    m = {r.label: r.zero_count for r in table.rows}
    assert m["(iv)"] <= m["(iii)"] <= m["(i)"]
    for coef in ("pearson", "spearman", "kendall"):
        assert table["(iv)"].correlations[coef] >= table["(i)"].correlations[coef]
    assert elapsed < 30.0


@pytest.mark.criterion("determinism: 1000-entry batch byte-identical across 1 and 8 workers, < 10 s total")
def test_determinism():
    data = make_dataset(1000, seed=7)
    lex = demo_lexicon()
    start = time.perf_counter()
    one = run_batch(data, lexicon=lex, baselines=["bleu", "rouge", "cider"], workers=1, threshold_fraction=0.3)
    eight = run_batch(data, lexicon=lex, baselines=["bleu", "rouge", "cider"], workers=8, threshold_fraction=0.3)
    elapsed = time.perf_counter() - start
    assert one.to_jsonl() == eight.to_jsonl()
    assert one.to_tsv() == eight.to_tsv()
    assert elapsed < 10.0
