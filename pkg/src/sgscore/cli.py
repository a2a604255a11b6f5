"""Command-line interface: ``sgscore {score,batch,ablate,export-dot,annotate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import kernels
from .adapter import AnalyzerError, captions_from_conllu, run_analyzer
from .annotation import AnnotationError, read_annotations, write_annotations
from .dot import export_dot, render_dot
from .harness import BASELINES, AblationConfig, DatasetError, load_dataset, run_ablation, run_batch
from .lexicon import EMPTY_LEXICON, LexiconError, extend_graph, load_lexicon
from .parser import ParserMode, parse_scene_graph
from .scoring import DENOMINATORS, score_pair


def _lexicon(path):
    if not path:
        return EMPTY_LEXICON
    with open(path, encoding="utf-8") as f:
        return load_lexicon(f)


def _annotations(path):
    with open(path, encoding="utf-8") as f:
        return read_annotations(f)


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _add_scoring_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lexicon", help="synonym lexicon (lemma<TAB>syn,syn,...)")
    p.add_argument("--no-extension", action="store_true", help="disable synonym graph extension")
    p.add_argument("--parser", choices=[m.value for m in ParserMode], default="pas")
    p.add_argument("--denominator", choices=DENOMINATORS, default="original")


def cmd_score(args) -> int:
    cands = _annotations(args.candidate)
    refs = _annotations(args.references)
    if not refs:
        raise DatasetError("reference file is empty")
    lex = _lexicon(args.lexicon)
    ref_graphs = [parse_scene_graph(r, args.parser) for r in refs]
    for c in cands:
        s = score_pair(parse_scene_graph(c, args.parser), ref_graphs, lex, not args.no_extension, args.denominator)
        print(json.dumps({"caption_id": c.caption_id, **s.to_dict()}, sort_keys=True, ensure_ascii=False))
    return 0


def _baselines(text: str | None) -> list[str]:
    if not text:
        return []
    names = [b.strip() for b in text.split(",") if b.strip()]
    unknown = [b for b in names if b not in BASELINES]
    if unknown:
        raise ValueError(f"unknown baselines {unknown}; choose from {','.join(BASELINES)} (meteor is unsupported)")
    return names


def cmd_batch(args) -> int:
    dataset = load_dataset(args.dataset, lenient=True)
    config = AblationConfig(ParserMode(args.parser), not args.no_extension)
    report = run_batch(dataset, config, _lexicon(args.lexicon), _baselines(args.baselines), args.workers,
                       args.threshold_fraction, args.theta, args.denominator)
    if args.report:
        _write(report.to_tsv(), args.report)
    if args.jsonl:
        _write(report.to_jsonl(), args.jsonl)
    if not args.report and not args.jsonl:
        sys.stdout.write(report.to_tsv())
    return 0


def cmd_ablate(args) -> int:
    dataset = load_dataset(args.dataset, lenient=True)
    table = run_ablation(dataset, _lexicon(args.lexicon), args.workers, args.denominator)
    _write(table.to_jsonl() if args.format == "jsonl" else table.to_tsv(), args.out)
    return 0


def cmd_export_dot(args) -> int:
    caps = _annotations(args.candidate)
    if not caps:
        raise DatasetError("candidate file is empty")
    if args.index >= len(caps):
        raise DatasetError(f"candidate file has {len(caps)} captions, index {args.index} requested")
    g = parse_scene_graph(caps[args.index], args.parser)
    target = extend_graph(g, _lexicon(args.lexicon)) if args.lexicon else g
    if args.out == "-":
        sys.stdout.write(render_dot(target))
    else:
        export_dot(target, args.out)
    return 0


def cmd_annotate(args) -> int:
    if args.conllu:
        with open(args.conllu, encoding="utf-8") as f:
            captions = captions_from_conllu(f)
    else:
        source = open(args.input, encoding="utf-8") if args.input else sys.stdin
        with source:
            texts = [t for t in source if t.strip()]
        captions = run_analyzer(args.cmd, texts, args.timeout)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        write_annotations(captions, out)
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sgscore", description="Scene-graph caption scoring and evaluation harness.")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 (kernels: {kernels.BACKEND})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score candidate captions against a reference set")
    p.add_argument("--candidate", required=True, help="annotation file (one caption per line)")
    p.add_argument("--references", required=True, help="annotation file of reference captions")
    _add_scoring_options(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("batch", help="score a dataset and correlate with human ratings")
    p.add_argument("--dataset", required=True)
    _add_scoring_options(p)
    p.add_argument("--baselines", help="comma list from: " + ",".join(BASELINES))
    p.add_argument("--report", help="TSV report path")
    p.add_argument("--jsonl", help="line-delimited JSON report path")
    p.add_argument("--threshold-fraction", type=float, default=None)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("ablate", help="parser x extension ablation table")
    p.add_argument("--dataset", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--denominator", choices=DENOMINATORS, default="original")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("export-dot", help="render a caption's scene graph as Graphviz dot")
    p.add_argument("--candidate", required=True)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.add_argument("--index", type=int, default=0, help="which caption of the file")
    p.add_argument("--parser", choices=[m.value for m in ParserMode], default="pas")
    p.add_argument("--lexicon", help="draw the synonym-extended graph")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("annotate", help="run an external analyzer and emit annotation JSON lines")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cmd", help="analyzer command reading text on stdin, writing CoNLL-U")
    src.add_argument("--conllu", help="convert an existing CoNLL-U file instead")
    p.add_argument("--input", help="raw captions, one per line (default: stdin)")
    p.add_argument("--out")
    p.add_argument("--timeout", type=float, default=None)
    p.set_defaults(func=cmd_annotate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (AnnotationError, DatasetError, LexiconError, AnalyzerError, ValueError, OSError) as exc:
        print(f"sgscore: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
