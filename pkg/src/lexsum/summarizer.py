"""End-to-end pipeline and word-budgeted sentence selection."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .chains import (
    LeskParams,
    extend_chains,
    prune_weak,
    seed_chains,
)
from .errors import ConfigError
from .segment import TopicSequence, cluster_chains, extract_sequences
from .text import Document, extract_candidates, fallback_words
from .wordnet import RELATIONS
from .wsd import disambiguate_highlights

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SummarizerConfig:
    depth: int = 3
    lam: int = 5
    threshold_t: int = 2
    cluster_threshold: float = 0.5
    summary_words: int = 100
    relations: tuple[str, ...] = ("hypernym",)
    gloss_fallback: bool = True
    linkage: str = "centroid"

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.depth < 1:
            raise ConfigError("depth must be >= 1")
        if self.lam < 0:
            raise ConfigError("lambda must be >= 0")
        if self.threshold_t < 1:
            raise ConfigError("Lesk threshold must be >= 1")
        if self.cluster_threshold < 0:
            raise ConfigError("cluster threshold must be >= 0")
        if self.summary_words < 10:
            raise ConfigError("summary_words must be >= 10")
        if not self.relations:
            raise ConfigError("at least one relation is required")
        for name in self.relations:
            if name not in RELATIONS:
                raise ConfigError(f"unknown relation {name!r}")
        if self.linkage not in ("centroid", "average"):
            raise ConfigError(f"unknown linkage {self.linkage!r}")

    @property
    def lesk(self) -> LeskParams:
        return LeskParams(lam=self.lam, threshold=self.threshold_t)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["relations"] = list(self.relations)
        return d


@dataclass(frozen=True)
class Summary:
    source_id: str
    selected: tuple[int, ...]
    text: str
    word_count: int
    trace: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "selected": list(self.selected),
            "text": self.text,
            "word_count": self.word_count,
            "trace": self.trace,
        }


def _visit_order(sequences: Iterable[TopicSequence]) -> list[int]:
    order: list[int] = []
    seen = set()
    ranked = sorted(sequences, key=lambda s: (-s.score, s.start_sentence, s.cluster_id))
    for seq in ranked:
        for k in seq.sentences:
            if k not in seen:
                seen.add(k)
                order.append(k)
    return order


def _take_prefix(order: Sequence[int], doc: Document, budget_words: int) -> list[int]:
    chosen: list[int] = []
    used = 0
    for k in order:
        words = doc.sentences[k].word_count
        if chosen and used + words > budget_words:
            break
        chosen.append(k)
        used += words
    return sorted(chosen)


def select_sentences(
    sequences: Sequence[TopicSequence], doc: Document, budget_words: int
) -> list[int]:
    """Greedy selection from scored sequences under a word budget.

    Sequences are visited by descending score (earlier start first on ties),
    each in document order. Sentences are taken while they fit the remaining
    budget; the first sentence is always taken, and selection stops at the
    first sentence that does not fit. Without sequences the leading
    sentences of the document are used instead.
    """
    order = _visit_order(sequences)
    if not order:
        order = list(range(len(doc.sentences)))
    return _take_prefix(order, doc, budget_words)


def build_chains(doc: Document, kb, config: SummarizerConfig):
    """Run disambiguation and chaining; returns (chains, trace counts)."""
    params = config.lesk
    candidates = extract_candidates(doc, kb)
    names = [w for w in fallback_words(doc, kb) if kb.wiki_abstract(w.lemma)]
    resolved = disambiguate_highlights(
        doc, kb, config.depth, params, config.relations, config.gloss_fallback, candidates
    )
    chains = seed_chains(resolved, kb, params)
    n_seeded = len(chains)
    done = {(r.word.sentence_index, r.word.token_index) for r in resolved}
    remaining = [w for w in candidates + names if (w.sentence_index, w.token_index) not in done]
    remaining.sort()
    chains = extend_chains(chains, remaining, kb, params)
    counts = {
        "candidates": len(candidates),
        "wiki_names": len(names),
        "resolved": len(resolved),
        "chains_seeded": n_seeded,
        "chain_members": sum(len(c) for c in chains),
    }
    return chains, counts


def analyze(doc: Document, kb, config: SummarizerConfig = SummarizerConfig()):
    """Chains, clusters and scored sequences for ``doc``."""
    missing = [r for r in config.relations if r not in kb.relations]
    if missing:
        raise ConfigError(f"relations not loaded into the knowledge base: {', '.join(missing)}")
    chains, counts = build_chains(doc, kb, config)
    kept = prune_weak(chains)
    clusters = cluster_chains(kept, config.cluster_threshold, len(doc.sentences), config.linkage)
    sequences = [s for c in clusters for s in extract_sequences(c, doc)]
    return chains, kept, clusters, sequences, counts


def summarize(doc: Document, kb, config: SummarizerConfig = SummarizerConfig()) -> Summary:
    chains, kept, clusters, sequences, counts = analyze(doc, kb, config)
    selected = select_sentences(sequences, doc, config.summary_words)
    degraded = not sequences
    if degraded:
        log.info("no chains for %s; using leading sentences", doc.source_id or "document")
    trace = dict(counts)
    trace.update(
        chains=len(chains),
        chains_kept=len(kept),
        clusters=len(clusters),
        sequences=[
            {
                "cluster": s.cluster_id,
                "start": s.start_sentence,
                "end": s.end_sentence,
                "score": s.score,
            }
            for s in sorted(sequences, key=lambda s: (-s.score, s.start_sentence, s.cluster_id))
        ],
        degraded=degraded,
    )
    text = " ".join(doc.sentences[k].raw for k in selected)
    word_count = sum(doc.sentences[k].word_count for k in selected)
    return Summary(doc.source_id, tuple(selected), text, word_count, trace)
