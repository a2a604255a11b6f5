"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from sgscore.graph import PHI, build_graph

LEMMAS = st.sampled_from(["a", "b", "c", "d", "e"])
RELS = st.sampled_from(["r", "s", "t"])
ATTRS = st.sampled_from(["x", "y", "z"])


@st.composite
def graphs(draw, phi=False, max_size=6):
    subjects = st.one_of(LEMMAS, st.just(PHI)) if phi else LEMMAS
    objects = draw(st.lists(LEMMAS, max_size=max_size))
    relations = draw(st.lists(st.tuples(subjects, RELS, LEMMAS), max_size=max_size))
    attributes = draw(st.lists(st.tuples(LEMMAS, ATTRS), max_size=max_size))
    return build_graph(objects, relations, attributes)


@st.composite
def lexicons(draw):
    from sgscore.lexicon import SynonymLexicon

    pool = ["a", "b", "c", "d", "e", "r", "s", "t", "x", "y", "z", "q"]
    mapping = draw(st.dictionaries(st.sampled_from(pool), st.sets(st.sampled_from(pool), max_size=3), max_size=6))
    return SynonymLexicon.from_mapping(mapping)
