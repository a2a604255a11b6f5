import io
import json

import pytest

from sgscore.annotation import write_annotations
from sgscore.cli import main
from sgscore.harness import write_dataset
from sgscore.synthetic import SYNSETS, make_dataset

from test_adapter import CONLLU


@pytest.fixture
def files(tmp_path):
    data = make_dataset(12, seed=1)
    ds = tmp_path / "data.jsonl"
    with open(ds, "w", encoding="utf-8") as f:
        write_dataset(data, f)
    lex = tmp_path / "lex.tsv"
    lex.write_text("".join(f"{g[0]}\t{','.join(g[1:])}\n" for g in SYNSETS), encoding="utf-8")
    cand = tmp_path / "cand.jsonl"
    refs = tmp_path / "refs.jsonl"
    with open(cand, "w", encoding="utf-8") as f:
        write_annotations([data[0].candidate], f)
    with open(refs, "w", encoding="utf-8") as f:
        write_annotations(data[0].references, f)
    return {"dataset": ds, "lexicon": lex, "cand": cand, "refs": refs, "dir": tmp_path}


def test_score(files, capsys):
    assert main(["score", "--candidate", str(files["cand"]), "--references", str(files["refs"]),
                 "--lexicon", str(files["lexicon"])]) == 0
    row = json.loads(capsys.readouterr().out)
    assert set(row) >= {"caption_id", "precision", "recall", "f1"}


def test_batch_writes_reports(files):
    tsv, jsonl = files["dir"] / "r.tsv", files["dir"] / "r.jsonl"
    assert main(["batch", "--dataset", str(files["dataset"]), "--lexicon", str(files["lexicon"]),
                 "--baselines", "bleu,rouge,cider", "--report", str(tsv), "--jsonl", str(jsonl),
                 "--threshold-fraction", "0.3", "--workers", "2"]) == 0
    assert "cider" in tsv.read_text(encoding="utf-8")
    assert len(jsonl.read_text(encoding="utf-8").splitlines()) == 13


def test_batch_rejects_meteor(files, capsys):
    assert main(["batch", "--dataset", str(files["dataset"]), "--baselines", "meteor"]) == 2
    assert "meteor" in capsys.readouterr().err


def test_ablate(files, capsys):
    assert main(["ablate", "--dataset", str(files["dataset"]), "--lexicon", str(files["lexicon"]),
                 "--format", "jsonl"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4


def test_export_dot(files, capsys):
    assert main(["export-dot", "--candidate", str(files["cand"]), "--out", "-"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    out = files["dir"] / "g.dot"
    assert main(["export-dot", "--candidate", str(files["cand"]), "--out", str(out),
                 "--lexicon", str(files["lexicon"])]) == 0
    assert "dashed" in out.read_text(encoding="utf-8")
    assert main(["export-dot", "--candidate", str(files["cand"]), "--out", "-", "--index", "5"]) == 2


def test_annotate_conllu(files, capsys):
    path = files["dir"] / "in.conllu"
    path.write_text(CONLLU, encoding="utf-8")
    assert main(["annotate", "--conllu", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and json.loads(lines[0])["caption_id"] == "fig"


def test_missing_file_is_an_error(capsys):
    assert main(["score", "--candidate", "/nope", "--references", "/nope"]) == 2
    assert capsys.readouterr().err.startswith("sgscore: error:")
