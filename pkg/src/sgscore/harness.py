"""Dataset model, batch scoring, ablation matrix and reports.

A dataset is line-delimited JSON, one entry per line::

    {"id": "e1", "candidate": <annotation>, "references": [<annotation>, ...],
     "human_scores": [{"evaluator": "w3", "score": 4}, ...]}
"""

from __future__ import annotations

import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from . import baselines as bl
from .annotation import AnnotatedCaption, AnnotationError, caption_from_dict
from .lexicon import EMPTY_LEXICON, SynonymLexicon
from .parser import ParserMode, parse_scene_graph
from .scoring import ZERO, ScoreTriple, score_pair
from .stats import (
    COEFFICIENTS,
    EvaluatorMatrix,
    FailureCase,
    UndefinedCorrelation,
    correlate,
    failure_cases,
    quantile_threshold,
    r_human,
    score_distribution,
)

log = logging.getLogger(__name__)

METRIC = "sg_f1"
BASELINES = ("bleu", "rouge", "cider")
UNSUPPORTED = ("meteor",)


class DatasetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class DatasetEntry:
    id: str
    candidate: AnnotatedCaption
    references: tuple[AnnotatedCaption, ...]
    human_scores: tuple[tuple[str, int], ...] = ()
    diagnostics: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.references:
            raise DatasetError(f"entry {self.id!r} has no references")

    @property
    def human_mean(self) -> float | None:
        if not self.human_scores:
            return None
        return sum(s for _, s in self.human_scores) / len(self.human_scores)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "candidate": self.candidate.to_dict(),
            "references": [r.to_dict() for r in self.references],
            "human_scores": [{"evaluator": e, "score": s} for e, s in self.human_scores],
        }


def _caption(doc, line: int, path: str, diagnostics: list[str] | None) -> AnnotatedCaption:
    try:
        return caption_from_dict(doc, line)
    except AnnotationError as exc:
        if diagnostics is None:
            raise AnnotationError(exc.message, line, f"{path}.{exc.path}" if exc.path else path) from None
        diagnostics.append(f"{path}: {exc.message}" + (f" ({exc.path})" if exc.path else ""))
        cid = doc.get("caption_id", path) if isinstance(doc, dict) else path
        return AnnotatedCaption(str(cid), ())


def entry_from_dict(doc, line: int | None = None, lenient: bool = False) -> DatasetEntry:
    """Validate one dataset document.

    With ``lenient`` a caption that fails annotation checks is replaced by an
    empty caption and the problem is recorded in ``diagnostics``; entry-level
    structure (id, references list, human scores) is always enforced.
    """
    if not isinstance(doc, dict):
        raise DatasetError("entry must be a JSON object", line)
    eid = doc.get("id")
    if not isinstance(eid, str) or not eid:
        raise DatasetError("entry needs a non-empty string id", line)
    refs = doc.get("references")
    if not isinstance(refs, list) or not refs:
        raise DatasetError(f"entry {eid!r}: references must be a non-empty list", line)
    if "candidate" not in doc:
        raise DatasetError(f"entry {eid!r}: missing candidate", line)
    notes: list[str] | None = [] if lenient else None
    candidate = _caption(doc["candidate"], line, "candidate", notes)
    references = tuple(_caption(r, line, f"references[{k}]", notes) for k, r in enumerate(refs))
    scores = []
    for k, hs in enumerate(doc.get("human_scores", [])):
        if not isinstance(hs, dict) or not isinstance(hs.get("evaluator"), str):
            raise DatasetError(f"entry {eid!r}: human_scores[{k}] needs an evaluator", line)
        s = hs.get("score")
        if isinstance(s, bool) or not isinstance(s, int) or not 1 <= s <= 5:
            raise DatasetError(f"entry {eid!r}: human_scores[{k}].score must be an integer 1..5", line)
        scores.append((hs["evaluator"], s))
    return DatasetEntry(eid, candidate, references, tuple(scores), tuple(notes or ()))


def read_dataset(stream: Iterable[str], lenient: bool = False) -> list[DatasetEntry]:
    entries = []
    seen: dict[str, int] = {}
    for lineno, text in enumerate(stream, 1):
        if not text.strip():
            continue
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON ({exc.msg})", lineno) from None
        entry = entry_from_dict(doc, lineno, lenient)
        if entry.id in seen:
            raise DatasetError(f"duplicate id {entry.id!r} (first seen on line {seen[entry.id]})", lineno)
        seen[entry.id] = lineno
        entries.append(entry)
    return entries


def load_dataset(path: str | os.PathLike, lenient: bool = False) -> list[DatasetEntry]:
    with open(path, encoding="utf-8") as f:
        return read_dataset(f, lenient)


def write_dataset(entries: Iterable[DatasetEntry], stream: IO[str]) -> None:
    for e in entries:
        stream.write(json.dumps(e.to_dict(), ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class AblationConfig:
    parser_mode: ParserMode = ParserMode.PAS
    extension: bool = True

    def label(self) -> str:
        return f"{self.parser_mode.value}{'+ext' if self.extension else ''}"


ABLATION_ROWS = (
    ("(i)", AblationConfig(ParserMode.UD, False)),
    ("(ii)", AblationConfig(ParserMode.UD, True)),
    ("(iii)", AblationConfig(ParserMode.PAS, False)),
    ("(iv)", AblationConfig(ParserMode.PAS, True)),
)


@dataclass
class CaptionResult:
    id: str
    score: ScoreTriple
    human_mean: float | None
    baselines: dict[str, float] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "type": "caption",
            "id": self.id,
            **{k: v for k, v in self.score.to_dict().items()},
            "human_mean": self.human_mean,
            "baselines": dict(sorted(self.baselines.items())),
            "diagnostics": list(self.diagnostics),
        }


@dataclass
class RunReport:
    config: AblationConfig
    denominator: str
    rows: list[CaptionResult]
    metrics: list[str]
    correlations: dict[str, dict[str, float | None]]
    zero_count: int
    n_correlated: int
    threshold_fraction: float | None = None
    threshold: float | None = None
    theta: float = 1.0
    failures: list[FailureCase] = field(default_factory=list)
    agreement: dict[str, float | None] = field(default_factory=dict)
    human_distribution: dict[int, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def metric_column(self, metric: str) -> list[float]:
        if metric == METRIC:
            return [r.score.f1 for r in self.rows]
        return [r.baselines[metric] for r in self.rows]

    def summary(self) -> dict:
        return {
            "type": "summary",
            "parser": self.config.parser_mode.value,
            "extension": self.config.extension,
            "denominator": self.denominator,
            "entries": len(self.rows),
            "metrics": list(self.metrics),
            "unsupported_metrics": list(UNSUPPORTED),
            "correlations": self.correlations,
            "n_correlated": self.n_correlated,
            "zero_count": self.zero_count,
            "threshold_fraction": self.threshold_fraction,
            "threshold": self.threshold,
            "theta": self.theta,
            "failures": [f.to_dict() for f in self.failures],
            "r_human": self.agreement,
            "human_distribution": {str(k): v for k, v in sorted(self.human_distribution.items())},
            "notes": list(self.notes),
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.summary(), sort_keys=True, ensure_ascii=False)]
        lines.extend(json.dumps(r.to_dict(), sort_keys=True, ensure_ascii=False) for r in self.rows)
        return "\n".join(lines) + "\n"

    def to_tsv(self) -> str:
        out = io.StringIO()
        coefs = list(COEFFICIENTS)
        out.write("metric\t" + "\t".join(coefs) + "\n")
        for m in self.metrics:
            out.write(m + "\t" + "\t".join(_fmt(self.correlations[m][c]) for c in coefs) + "\n")
        if self.agreement:
            out.write("r_human\t" + "\t".join(_fmt(self.agreement.get(c)) for c in coefs) + "\n")
        for m in UNSUPPORTED:
            out.write(f"# {m}: unsupported\n")
        out.write("\n")
        out.write(f"entries\t{len(self.rows)}\n")
        out.write(f"correlated\t{self.n_correlated}\n")
        out.write(f"zero_count\t{self.zero_count}\n")
        if self.threshold_fraction is not None:
            out.write(f"threshold@{self.threshold_fraction:g}\t{_fmt(self.threshold)}\n")
        out.write(f"failures@theta={self.theta:g}\t{len(self.failures)}\n")
        for level in sorted(self.human_distribution, reverse=True):
            out.write(f"human_score_{level}\t{self.human_distribution[level]}\n")
        for note in self.notes:
            out.write(f"# {note}\n")
        out.write("\n")
        header = ["id", "precision", "recall", METRIC, "matched", "cand_total", "ref_total", "human_mean"]
        header += [m for m in self.metrics if m != METRIC]
        out.write("\t".join(header) + "\n")
        for r in self.rows:
            s = r.score
            cells = [r.id, _fmt(s.precision), _fmt(s.recall), _fmt(s.f1), str(s.matched),
                     str(s.cand_total), str(s.ref_total), _fmt(r.human_mean)]
            cells += [_fmt(r.baselines[m]) for m in self.metrics if m != METRIC]
            out.write("\t".join(cells) + "\n")
        return out.getvalue()


def _fmt(x: float | None) -> str:
    return "NA" if x is None else f"{x:.6f}"


# per-process scoring context, installed by _init_worker
_CONTEXT: dict = {}


def _init_worker(context: dict) -> None:
    _CONTEXT.clear()
    _CONTEXT.update(context)


def _score_entry(entry: DatasetEntry) -> CaptionResult:
    ctx = _CONTEXT
    notes = list(entry.diagnostics)
    try:
        cand = parse_scene_graph(entry.candidate, ctx["mode"])
        refs = [parse_scene_graph(r, ctx["mode"]) for r in entry.references]
        score = score_pair(cand, refs, ctx["lexicon"], ctx["extension"], ctx["denominator"])
    except Exception as exc:  # noqa: BLE001 - one bad entry must not stop the batch
        notes.append(f"scoring failed: {exc}")
        score = ZERO
    result = CaptionResult(entry.id, score, entry.human_mean, diagnostics=notes)
    cand_tokens = entry.candidate.surfaces
    ref_tokens = [r.surfaces for r in entry.references]
    if "bleu" in ctx["baselines"]:
        result.baselines["bleu"] = bl.bleu(cand_tokens, ref_tokens)
    if "rouge" in ctx["baselines"]:
        result.baselines["rouge"] = bl.rouge_l(cand_tokens, ref_tokens)
    return result


def _score_all(entries: Sequence[DatasetEntry], context: dict, workers: int) -> list[CaptionResult]:
    if workers <= 1 or len(entries) < 2:
        _init_worker(context)
        return [_score_entry(e) for e in entries]
    chunk = max(1, len(entries) // (workers * 4))
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(context,)) as pool:
        return list(pool.map(_score_entry, entries, chunksize=chunk))


def run_batch(
    dataset: Sequence[DatasetEntry],
    config: AblationConfig = AblationConfig(),
    lexicon: SynonymLexicon = EMPTY_LEXICON,
    baselines: Iterable[str] = (),
    workers: int = 1,
    threshold_fraction: float | None = None,
    theta: float = 1.0,
    denominator: str = "original",
) -> RunReport:
    """Score every entry and correlate each metric with the mean human score."""
    if not dataset:
        raise DatasetError("empty dataset")
    wanted = [b for b in BASELINES if b in set(baselines)]
    unknown = set(baselines) - set(BASELINES)
    if unknown:
        raise ValueError(f"unknown baselines: {sorted(unknown)}")
    context = {
        "mode": ParserMode(config.parser_mode),
        "lexicon": lexicon,
        "extension": config.extension,
        "denominator": denominator,
        "baselines": tuple(wanted),
    }
    ordered = sorted(dataset, key=lambda e: e.id)
    rows = _score_all(ordered, context, workers)
    notes = []
    if "cider" in wanted:
        corpus = [(e.candidate.surfaces, [r.surfaces for r in e.references]) for e in ordered]
        if len(corpus) >= 2:
            for row, value in zip(rows, bl.cider(corpus)):
                row.baselines["cider"] = value
        else:
            wanted.remove("cider")
            notes.append("cider skipped: corpus has fewer than two entries")
    metrics = [METRIC] + wanted

    rated = [r for r in rows if r.human_mean is not None]
    human = [r.human_mean for r in rated]
    report = RunReport(
        config=config,
        denominator=denominator,
        rows=rows,
        metrics=metrics,
        correlations={},
        zero_count=sum(1 for r in rows if r.score.is_zero),
        n_correlated=len(rated),
        threshold_fraction=threshold_fraction,
        theta=theta,
        notes=notes,
    )
    for m in metrics:
        col = [r.score.f1 if m == METRIC else r.baselines[m] for r in rated]
        report.correlations[m] = {c: correlate(col, human, c) if len(rated) >= 2 else None for c in COEFFICIENTS}
    if threshold_fraction is not None:
        report.threshold = quantile_threshold([r.score.f1 for r in rows], threshold_fraction)
    if rated:
        try:
            flagged = failure_cases([r.score.f1 for r in rated], human, theta)
        except ValueError as exc:
            notes.append(f"failure analysis skipped: {exc}")
        else:
            for f in flagged:
                f.caption_id = rated[f.index].id
            report.failures = flagged

    raw = [(ev, e.id, s) for e in ordered for ev, s in e.human_scores]
    report.human_distribution = dict(score_distribution([s for _, _, s in raw]).counts)
    if raw:
        matrix = EvaluatorMatrix.from_triples(raw)
        for c in COEFFICIENTS:
            try:
                report.agreement[c] = r_human(matrix, c).value
            except UndefinedCorrelation:
                report.agreement[c] = None
    log.info("scored %d entries (%s), zero_count=%d", len(rows), config.label(), report.zero_count)
    return report


@dataclass(frozen=True)
class AblationRow:
    label: str
    config: AblationConfig
    correlations: dict[str, float | None]
    zero_count: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "parser": self.config.parser_mode.value,
            "extension": self.config.extension,
            **self.correlations,
            "zero_count": self.zero_count,
        }


@dataclass(frozen=True)
class AblationTable:
    rows: tuple[AblationRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, label: str) -> AblationRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def to_tsv(self) -> str:
        coefs = list(COEFFICIENTS)
        lines = ["row\tparser\textension\t" + "\t".join(coefs) + "\tzero_count"]
        for r in self.rows:
            cells = [r.label, r.config.parser_mode.value, "yes" if r.config.extension else "no"]
            cells += [_fmt(r.correlations[c]) for c in coefs] + [str(r.zero_count)]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in self.rows)


def run_ablation(
    dataset: Sequence[DatasetEntry],
    lexicon: SynonymLexicon,
    workers: int = 1,
    denominator: str = "original",
) -> AblationTable:
    """The four parser × extension configurations, each with correlations and zero count."""
    rows = []
    for label, cfg in ABLATION_ROWS:
        report = run_batch(dataset, cfg, lexicon, workers=workers, denominator=denominator)
        rows.append(AblationRow(label, cfg, report.correlations[METRIC], report.zero_count))
    return AblationTable(tuple(rows))
