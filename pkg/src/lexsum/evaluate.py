"""Sentence-level P/R/F1 and ROUGE-N over a corpus manifest.

Manifest format (JSON Lines, UTF-8): one object per non-blank line, ``#``
lines are comments::

    {"doc_id": "d061", "document": "docs/d061.txt", "references": ["refs/d061.a.txt"]}

Relative paths resolve against the manifest's directory.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyReference, LexsumError, ManifestError
from .text import default_stopwords, split_sentences, stem

REPORT_SCHEMA = "lexsum.eval-report/1"
METRICS = ("p", "r", "f1", "rouge1", "rouge2")

_ALNUM = re.compile(r"[a-z0-9]+")


def normalize_sentence(sentence: str) -> str:
    return " ".join(sentence.split()).casefold()


def prf1(ref_sentences: Iterable[str], cand_sentences: Iterable[str]) -> tuple[float, float, float]:
    """Precision, recall and F1 of candidate sentences against reference ones.

    Sentences are compared after whitespace normalization and case folding.
    """
    ref = {normalize_sentence(s) for s in ref_sentences}
    cand = {normalize_sentence(s) for s in cand_sentences}
    if not ref:
        raise EmptyReference("reference summary has no sentences")
    hit = len(ref & cand)
    p = hit / len(cand) if cand else 0.0
    r = hit / len(ref)
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f1


def rouge_tokens(text: str, use_stem: bool = False, drop_stopwords: bool = False) -> list[str]:
    tokens = _ALNUM.findall(text.casefold())
    if drop_stopwords:
        stop = default_stopwords()
        tokens = [t for t in tokens if t not in stop]
    if use_stem:
        tokens = [stem(t) if t.isalpha() else t for t in tokens]
    return tokens


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i: i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(refs: Sequence[Sequence[str]], cand: Sequence[str], n: int) -> float:
    """ROUGE-N recall with clipped counts, summed over all references."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not refs:
        raise EmptyReference("no reference summaries")
    cand_counts = _ngrams(cand, n)
    matched = total = 0
    for ref in refs:
        ref_counts = _ngrams(ref, n)
        total += sum(ref_counts.values())
        matched += sum(min(c, cand_counts[g]) for g, c in ref_counts.items())
    if total == 0:
        raise EmptyReference(f"references contain no {n}-grams")
    return matched / total


# --------------------------------------------------------------------------
# corpus harness


@dataclass(frozen=True)
class ManifestEntry:
    doc_id: str
    document: Path
    references: tuple[Path, ...]
    line_no: int = 0


@dataclass(frozen=True)
class EvalRow:
    doc_id: str
    p: float
    r: float
    f1: float
    rouge1: float
    rouge2: float
    summary: str = ""

    def metrics(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in METRICS}


@dataclass
class EvalReport:
    per_doc: list[EvalRow]
    config: dict = field(default_factory=dict)

    @property
    def averages(self) -> dict[str, float]:
        if not self.per_doc:
            return {m: 0.0 for m in METRICS}
        return {m: sum(getattr(r, m) for r in self.per_doc) / len(self.per_doc) for m in METRICS}

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "config": self.config,
            "documents": [
                {"doc_id": r.doc_id, **r.metrics(), "summary": r.summary}
                for r in sorted(self.per_doc, key=lambda r: r.doc_id)
            ],
            "averages": self.averages,
        }


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"manifest not found: {path}")
    base = path.parent
    entries = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            where = f"{path}:{line_no}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"{where}: invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise ManifestError(f"{where}: entry must be a JSON object")
            doc_id = obj.get("doc_id")
            if not isinstance(doc_id, str) or not doc_id:
                raise ManifestError(f"{where}: missing or empty 'doc_id'")
            if doc_id in seen:
                raise ManifestError(f"{where}: duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            document = obj.get("document")
            refs = obj.get("references")
            if isinstance(refs, str):
                refs = [refs]
            if not isinstance(document, str):
                raise ManifestError(f"{where}: entry {doc_id!r}: 'document' must be a path")
            if not refs or not all(isinstance(r, str) for r in refs):
                raise ManifestError(f"{where}: entry {doc_id!r}: 'references' must list paths")
            unknown = set(obj) - {"doc_id", "document", "references"}
            if unknown:
                raise ManifestError(f"{where}: entry {doc_id!r}: unknown fields {sorted(unknown)}")
            doc_path = base / document
            if not doc_path.is_file():
                raise ManifestError(f"{where}: entry {doc_id!r}: document not found: {doc_path}")
            ref_paths = []
            for r in refs:
                rp = base / r
                if not rp.is_file():
                    raise ManifestError(f"{where}: entry {doc_id!r}: reference not found: {rp}")
                ref_paths.append(rp)
            entries.append(ManifestEntry(doc_id, doc_path, tuple(ref_paths), line_no))
    return entries


def score_summary(
    doc_id: str,
    candidate: Sequence[str],
    references: Sequence[str],
    rouge_stem: bool = False,
    rouge_drop_stopwords: bool = False,
) -> EvalRow:
    """Score candidate sentences against reference texts.

    P/R/F1 are averaged over references; ROUGE pools all references.
    """
    ref_sentences = [
        [s.raw for s in split_sentences(text, doc_id).sentences] for text in references
    ]
    scores = [prf1(rs, candidate) for rs in ref_sentences]
    p, r, f1 = (sum(x) / len(scores) for x in zip(*scores))
    cand_tokens = rouge_tokens(" ".join(candidate), rouge_stem, rouge_drop_stopwords)
    ref_tokens = [rouge_tokens(t, rouge_stem, rouge_drop_stopwords) for t in references]
    return EvalRow(
        doc_id, p, r, f1,
        rouge_n(ref_tokens, cand_tokens, 1),
        rouge_n(ref_tokens, cand_tokens, 2),
        " ".join(candidate),
    )


def evaluate_corpus(
    manifest: str | Path,
    kb,
    config=None,
    jobs: int = 1,
    rouge_stem: bool = False,
    rouge_drop_stopwords: bool = False,
) -> EvalReport:
    from .summarizer import SummarizerConfig, summarize

    config = config or SummarizerConfig()
    entries = read_manifest(manifest)

    def run(entry: ManifestEntry) -> EvalRow:
        try:
            text = entry.document.read_text(encoding="utf-8")
            refs = [p.read_text(encoding="utf-8") for p in entry.references]
            doc = split_sentences(text, entry.doc_id)
            summary = summarize(doc, kb, config)
            cand = [doc.sentences[k].raw for k in summary.selected]
            return score_summary(entry.doc_id, cand, refs, rouge_stem, rouge_drop_stopwords)
        except LexsumError as exc:
            raise ManifestError(f"entry {entry.doc_id!r} (line {entry.line_no}): {exc}") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run, entries))
    else:
        rows = [run(e) for e in entries]
    rows.sort(key=lambda r: r.doc_id)
    cfg = config.to_dict()
    cfg.update(rouge_stem=rouge_stem, rouge_drop_stopwords=rouge_drop_stopwords)
    return EvalReport(rows, cfg)
