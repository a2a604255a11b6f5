import sys

import pytest

from sgscore.adapter import AnalyzerError, captions_from_conllu, run_analyzer
from sgscore.annotation import AnnotationError
from sgscore.parser import parse_scene_graph

CONLLU = """\
# sent_id = fig
# text = akai kasa o sashita hito
1\takai\takai\tADJ\t_\t_\t2\tamod\t_\t_
2\tkasa\tkasa\tNOUN\t_\t_\t4\tobj\t_\t_
3\to\to\tADP\t_\t_\t2\tcase\t_\t_
4\tsashita\tsasu\tVERB\t_\t_\t5\tacl\t_\tArgs=wo:2
5\thito\thito\tNOUN\t_\t_\t0\troot\t_\t_

1\tkinpatsu\tkinpatsu\tNOUN\t_\t_\t3\tnmod\t_\tPropNoun=Yes
2\tno\tno\tADP\t_\t_\t1\tcase\t_\t_
3\tdansei\tdansei\tNOUN\t_\t_\t0\troot\t_\t_
"""


def test_conversion():
    fig, blond = captions_from_conllu(CONLLU.splitlines())
    assert fig.caption_id == "fig" and blond.caption_id == "s2"
    assert fig.tokens[1].case == "wo"
    assert fig.tokens[3].args == (("wo", 1),)
    assert fig.tokens[4].head == -1
    assert blond.tokens[0].prop_noun
    g = parse_scene_graph(fig)
    assert ("hito", "sasu", "kasa") in g.relations and ("kasa", "akai") in g.attributes
    assert parse_scene_graph(blond).attributes == {("dansei", "kinpatsu")}


def test_kana_particles_and_multiword_lines():
    text = "1-2\tx\t_\t_\t_\t_\t_\t_\t_\t_\n1\t犬\t犬\tNOUN\t_\t_\t3\tnsubj\t_\t_\n2\tが\tが\tADP\t_\t_\t1\tcase\t_\t_\n3\t走る\t走る\tVERB\t_\t_\t0\troot\t_\t_\n"
    [c] = captions_from_conllu(text.splitlines())
    assert len(c.tokens) == 3 and c.tokens[0].case == "ga"


def test_bad_input():
    with pytest.raises(AnnotationError) as info:
        captions_from_conllu(["1\ta\ta\tNOUN"])
    assert info.value.line == 1
    with pytest.raises(AnnotationError):
        captions_from_conllu(["1\ta\ta\tNOUN\t_\t_\t7\troot\t_\t_"])


def test_run_analyzer(tmp_path):
    script = tmp_path / "fake.py"
    script.write_text("import sys\nsys.stdin.read()\nprint(open(sys.argv[1]).read())\n", encoding="utf-8")
    data = tmp_path / "out.conllu"
    data.write_text(CONLLU, encoding="utf-8")
    caps = run_analyzer([sys.executable, str(script), str(data)], ["akai kasa o sashita hito"])
    assert len(caps) == 2
    with pytest.raises(AnalyzerError):
        run_analyzer([sys.executable, "-c", "import sys; sys.exit(3)"], ["x"])
    with pytest.raises(AnalyzerError):
        run_analyzer(["/nonexistent/analyzer"], ["x"])
