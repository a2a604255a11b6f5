"""Seeded generators for annotated captions, datasets, graphs and lexicons.

The caption templates mimic the analyzer output for short Japanese
captions (romanized lemmas). Used by the test suite, the acceptance suite
and the benchmarks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .annotation import AnnotatedCaption, Token
from .graph import PHI, SceneGraph, build_graph
from .harness import DatasetEntry
from .lexicon import SynonymLexicon

SUBJECTS = ["hito", "dansei", "josei", "otokonoko", "onnanoko", "inu", "neko"]
# (verb, object noun, case of the object)
FRAMES = [
    ("sasu", "kasa", "wo"),
    ("noru", "sukētobōdo", "ni"),
    ("suwaru", "benchi", "ni"),
    ("motsu", "denwa", "wo"),
    ("miru", "umi", "wo"),
    ("kaburu", "herumetto", "wo"),
    ("taberu", "pan", "wo"),
    ("ugokasu", "kappu", "wo"),
    ("oku", "hako", "ni"),
]
ADJECTIVES = ["akai", "aoi", "ōkii", "chiisai", "shiroi", "kuroi"]
PROPERTY_NOUNS = ["kinpatsu", "mizuiro", "orenji-iro"]
DONOR_VERB = "tsukamu"

SYNSETS = [
    ["hito", "ningen"],
    ["dansei", "otoko"],
    ["josei", "onna"],
    ["otokonoko", "shōnen"],
    ["onnanoko", "shōjo"],
    ["inu", "wanko"],
    ["neko", "nyanko"],
    ["kasa", "amagasa"],
    ["sukētobōdo", "sukebō"],
    ["benchi", "koshikake"],
    ["denwa", "keitai"],
    ["umi", "kaiyō"],
    ["herumetto", "bōshi"],
    ["pan", "shokupan"],
    ["kappu", "koppu"],
    ["hako", "kēsu"],
    ["sasu", "kazasu"],
    ["noru", "joshasuru"],
    ["suwaru", "koshikakeru"],
    ["motsu", "kakaeru"],
    ["miru", "nagameru"],
    ["kaburu", "chakuyōsuru"],
    ["taberu", "kuu"],
    ["ugokasu", "idōsaseru"],
    ["oku", "haichisuru"],
    ["ōkii", "dekai"],
    ["akai", "makka"],
]

# vocabulary never used by scenes, for unrelated candidates
UNRELATED_SUBJECTS = ["tori", "uma", "kuruma"]
UNRELATED_FRAMES = [("tobu", "sora", "wo"), ("hashiru", "michi", "wo"), ("nomu", "mizu", "wo")]


def demo_lexicon() -> SynonymLexicon:
    return SynonymLexicon.from_synsets(SYNSETS)


def _syn(lemma: str) -> str:
    for group in SYNSETS:
        if lemma in group:
            return group[1] if group[0] == lemma else group[0]
    return lemma


class CaptionBuilder:
    """Append tokens, then wire heads and predicate arguments."""

    def __init__(self, caption_id: str):
        self.caption_id = caption_id
        self.rows: list[dict] = []

    def add(self, lemma, pos, dep="", case=None, prop_noun=False, surface=None) -> int:
        self.rows.append({"surface": surface or lemma, "lemma": lemma, "pos": pos, "head": -1,
                          "dep": dep, "case": case, "prop_noun": prop_noun, "args": []})
        return len(self.rows) - 1

    def noun(self, lemma, head_dep="", case=None, prop_noun=False) -> int:
        i = self.add(lemma, "noun", head_dep, case, prop_noun)
        if case is not None:
            self.attach(self.add(case, "particle", "case"), i)
        return i

    def attach(self, child: int, head: int) -> None:
        self.rows[child]["head"] = head

    def arg(self, pred: int, case: str, target: int) -> None:
        self.rows[pred]["args"].append((case, target))

    def build(self) -> AnnotatedCaption:
        tokens = tuple(
            Token(i, r["surface"], r["lemma"], r["pos"], r["head"], r["dep"], r["case"],
                  r["prop_noun"], tuple(r["args"]))
            for i, r in enumerate(self.rows)
        )
        return AnnotatedCaption(self.caption_id, tokens)


@dataclass
class Scene:
    subject: str
    verb: str
    obj: str
    case: str
    subject_adj: str | None = None
    object_adj: str | None = None
    subject_prop: str | None = None

    def synonymous(self) -> "Scene":
        """Same scene with every content word swapped for its listed synonym; unlisted modifiers dropped."""
        adj = lambda a: _syn(a) if a and _syn(a) != a else None  # noqa: E731
        return Scene(_syn(self.subject), _syn(self.verb), _syn(self.obj), self.case,
                     adj(self.subject_adj), adj(self.object_adj), None)


def _noun_phrase(b: CaptionBuilder, noun: str, adj: str | None, prop: str | None, dep: str, case: str | None) -> int:
    """Modifiers first, then the head noun with its case particle."""
    mods = []
    if prop:
        p = b.noun(prop, "nmod", prop_noun=True)
        b.attach(b.add("no", "particle", "case"), p)
        mods.append(p)
    if adj:
        mods.append(b.add(adj, "adjective", "amod"))
    n = b.noun(noun, dep, case)
    for m in mods:
        b.attach(m, n)
    return n


def explicit_caption(cid: str, s: Scene, with_pas: bool = True) -> AnnotatedCaption:
    """``[mods] S ga [mods] O <case> V``."""
    b = CaptionBuilder(cid)
    subj = _noun_phrase(b, s.subject, s.subject_adj, s.subject_prop, "nsubj", "ga")
    obj = _noun_phrase(b, s.obj, s.object_adj, None, "obj" if s.case == "wo" else "obl", s.case)
    v = b.add(s.verb, "verb", "root")
    b.attach(subj, v)
    b.attach(obj, v)
    if with_pas:
        b.arg(v, "ga", subj)
        b.arg(v, s.case, obj)
    return b.build()


def relative_caption(cid: str, s: Scene) -> AnnotatedCaption:
    """``[mods] O <case> V [mods] S``: the clause modifies its own subject."""
    b = CaptionBuilder(cid)
    obj = _noun_phrase(b, s.obj, s.object_adj, None, "obj" if s.case == "wo" else "obl", s.case)
    v = b.add(s.verb, "verb", "acl")
    subj = _noun_phrase(b, s.subject, s.subject_adj, s.subject_prop, "root", None)
    b.attach(obj, v)
    b.attach(v, subj)
    b.arg(v, s.case, obj)
    return b.build()


def zero_subject_caption(cid: str, s: Scene) -> AnnotatedCaption:
    """``S ga O wo tsukande, (φ) O <case> V``: the second predicate has no overt subject."""
    b = CaptionBuilder(cid)
    subj = _noun_phrase(b, s.subject, s.subject_adj, s.subject_prop, "nsubj", "ga")
    obj = _noun_phrase(b, s.obj, s.object_adj, None, "obj", "wo")
    v1 = b.add(DONOR_VERB, "verb", "advcl")
    v2 = b.add(s.verb, "verb", "root")
    b.attach(subj, v1)
    b.attach(obj, v1)
    b.attach(v1, v2)
    b.arg(v1, "ga", subj)
    b.arg(v1, "wo", obj)
    b.arg(v2, s.case, obj)
    return b.build()


def adjective_predicate_caption(cid: str, noun: str, adj: str) -> AnnotatedCaption:
    """``N ga ADJ``."""
    b = CaptionBuilder(cid)
    n = b.noun(noun, "nsubj", "ga")
    a = b.add(adj, "adjective", "root")
    b.attach(n, a)
    b.arg(a, "ga", n)
    return b.build()


def random_scene(rng: random.Random, unrelated: bool = False) -> Scene:
    subjects = UNRELATED_SUBJECTS if unrelated else SUBJECTS
    verb, obj, case = rng.choice(UNRELATED_FRAMES if unrelated else FRAMES)
    if unrelated:
        return Scene(rng.choice(subjects), verb, obj, case)
    return Scene(
        rng.choice(subjects), verb, obj, case,
        subject_adj=rng.choice(ADJECTIVES) if rng.random() < 0.3 else None,
        object_adj=rng.choice(ADJECTIVES) if rng.random() < 0.5 else None,
        subject_prop=rng.choice(PROPERTY_NOUNS) if rng.random() < 0.3 else None,
    )


def random_caption(rng: random.Random, cid: str) -> AnnotatedCaption:
    """One caption from a random template; always yields a non-empty graph."""
    s = random_scene(rng)
    kind = rng.randrange(5)
    if kind == 0:
        return relative_caption(cid, s)
    if kind == 1:
        return zero_subject_caption(cid, s)
    if kind == 2:
        return adjective_predicate_caption(cid, s.obj, rng.choice(ADJECTIVES))
    return explicit_caption(cid, s, with_pas=kind == 3)


def _human(rng: random.Random, centre: int, n: int = 3) -> tuple[tuple[str, int], ...]:
    picks = rng.sample(range(20), n)
    return tuple((f"w{p:02d}", max(1, min(5, centre + rng.choice((-1, 0, 0, 0, 1))))) for p in sorted(picks))


# candidate kinds, with their human-score centres
KINDS = {
    "explicit": 5,
    "relative": 5,
    "zero_subject": 5,
    "synonym": 4,
    "partial": 3,
    "unrelated": 1,
}


def make_entry(rng: random.Random, eid: str, kind: str, n_refs: int = 3) -> DatasetEntry:
    scene = random_scene(rng)
    refs = []
    for k in range(n_refs):
        variant = Scene(scene.subject, scene.verb, scene.obj, scene.case,
                        scene.subject_adj if k % 2 == 0 else None,
                        scene.object_adj if k != 1 else None,
                        scene.subject_prop if k == 0 else None)
        refs.append(explicit_caption(f"{eid}/ref{k}", variant))
    cid = f"{eid}/cand"
    if kind == "explicit":
        cand = explicit_caption(cid, scene)
    elif kind == "relative":
        cand = relative_caption(cid, scene)
    elif kind == "zero_subject":
        cand = zero_subject_caption(cid, scene)
    elif kind == "synonym":
        # no shared lemma with the references: matches only through synonyms
        cand = explicit_caption(cid, scene.synonymous())
    elif kind == "partial":
        others = [f for f in FRAMES if f[0] != scene.verb and f[1] != scene.obj]
        verb, obj, case = rng.choice(others)
        cand = explicit_caption(cid, Scene(scene.subject, verb, obj, case))
    elif kind == "unrelated":
        cand = explicit_caption(cid, random_scene(rng, unrelated=True))
    else:
        raise ValueError(f"unknown candidate kind {kind!r}")
    return DatasetEntry(eid, cand, tuple(refs), _human(rng, KINDS[kind]))


def make_dataset(n: int, seed: int = 0, kinds: dict[str, float] | None = None) -> list[DatasetEntry]:
    """``n`` entries whose candidate kinds are drawn with the given weights."""
    rng = random.Random(seed)
    weights = kinds or {k: 1.0 for k in KINDS}
    names = sorted(weights)
    width = len(str(n))
    return [
        make_entry(rng, f"e{i:0{width}d}", rng.choices(names, [weights[k] for k in names])[0])
        for i in range(n)
    ]


@dataclass
class GraphVocabulary:
    objects: list[str] = field(default_factory=lambda: [f"o{i}" for i in range(6)])
    relations: list[str] = field(default_factory=lambda: [f"r{i}" for i in range(4)])
    attributes: list[str] = field(default_factory=lambda: [f"a{i}" for i in range(4)])


def random_graph(rng: random.Random, vocab: GraphVocabulary | None = None, max_tuples: int = 8,
                 phi_rate: float = 0.0) -> SceneGraph:
    """A random graph whose tuple count (φ relations aside) is at most ``max_tuples``."""
    vocab = vocab or GraphVocabulary()
    objects, relations, attributes = set(), set(), set()
    target = rng.randint(0, max_tuples)
    for _ in range(4 * max_tuples):
        g = build_graph(objects, relations, attributes)
        if len(g.objects) + sum(r[0] != PHI for r in g.relations) + len(g.attributes) >= target:
            break
        kind = rng.random()
        if kind < 0.4:
            candidate = (set(objects) | {rng.choice(vocab.objects)}, relations, attributes)
        elif kind < 0.75:
            subj = PHI if rng.random() < phi_rate else rng.choice(vocab.objects)
            triple = (subj, rng.choice(vocab.relations), rng.choice(vocab.objects))
            candidate = (objects, relations | {triple}, attributes)
        else:
            pair = (rng.choice(vocab.objects), rng.choice(vocab.attributes))
            candidate = (objects, relations, attributes | {pair})
        trial = build_graph(*candidate)
        size = len(trial.objects) + sum(r[0] != PHI for r in trial.relations) + len(trial.attributes)
        if size <= max_tuples:
            objects, relations, attributes = set(trial.objects), set(trial.relations), set(trial.attributes)
    return build_graph(objects, relations, attributes)


def random_lexicon(rng: random.Random, vocab: GraphVocabulary | None = None, density: float = 0.3) -> SynonymLexicon:
    """Random, possibly asymmetric lexicon over the vocabulary plus a few outside lemmas."""
    vocab = vocab or GraphVocabulary()
    entries: dict[str, set[str]] = {}
    for pool in (vocab.objects, vocab.relations, vocab.attributes):
        extra = [f"{pool[0][0]}x{i}" for i in range(2)]
        for lemma in pool:
            for other in pool + extra:
                if other != lemma and rng.random() < density:
                    entries.setdefault(lemma, set()).add(other)
    return SynonymLexicon.from_mapping(entries)
