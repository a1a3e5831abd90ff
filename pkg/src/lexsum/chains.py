"""Lexical chains: gloss comparison, chain growth, scoring and pruning."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConfigError
from .text import CandidateWord

NAME = "name"


@dataclass(frozen=True)
class LeskParams:
    lam: int = 5
    threshold: int = 2
    max_ngram: int = 2

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigError("lambda must be >= 0")
        if self.threshold < 1:
            raise ConfigError("Lesk threshold must be >= 1")
        if self.max_ngram < 1:
            raise ConfigError("max_ngram must be >= 1")


@lru_cache(maxsize=200_000)
def _ngram_sets(tokens: tuple[str, ...], max_ngram: int) -> tuple[frozenset, ...]:
    return tuple(
        frozenset(zip(*(tokens[i:] for i in range(n)))) for n in range(1, max_ngram + 1)
    )


def lesk_score(g1: Sequence[str], g2: Sequence[str], max_ngram: int = 2) -> int:
    """Distinct shared unigrams plus distinct shared adjacent bigrams."""
    a = _ngram_sets(tuple(g1), max_ngram)
    b = _ngram_sets(tuple(g2), max_ngram)
    return sum(len(x & y) for x, y in zip(a, b))


def pair_score(
    g1: Sequence[str],
    g2: Sequence[str],
    w1: str,
    w2: str,
    params: LeskParams = LeskParams(),
) -> int:
    """Lesk overlap of two glosses plus the lambda bonus.

    The bonus is added once when either word occurs in the other side's
    gloss.
    """
    score = lesk_score(g1, g2, params.max_ngram)
    if w1 in g2 or w2 in g1:
        score += params.lam
    return score


# --------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainMember:
    lemma: str
    sentence_index: int
    sense: int | None
    sense_number: int
    token_index: int = 0
    pos: str = "noun"

    @property
    def key(self) -> tuple[int, int]:
        return (self.sentence_index, self.token_index)


def chain_score(chain: "LexicalChain") -> float:
    """Length times homogeneity; every member lemma distinct scores 0."""
    length = len(chain.members)
    if length == 0:
        raise ValueError("chain has no members")
    distinct = len({m.lemma for m in chain.members})
    return length * (1.0 - distinct / length)


@dataclass
class LexicalChain:
    id: int
    members: list[ChainMember] = field(default_factory=list)
    score: float = 0.0

    def __post_init__(self):
        self.members.sort(key=lambda m: m.key)
        if self.members:
            self.score = chain_score(self)

    def add(self, member: ChainMember) -> None:
        self.members.append(member)
        self.members.sort(key=lambda m: m.key)
        self.score = chain_score(self)

    def __len__(self):
        return len(self.members)


def gloss_for(kb, sense: int | None, lemma: str) -> Sequence[str] | None:
    """Gloss tokens of a synset, or the encyclopedia abstract for a name."""
    if sense is not None:
        return kb.gloss_tokens(sense)
    return kb.wiki_abstract(lemma)


def seed_chains(resolved, kb=None, params: LeskParams | None = None) -> list[LexicalChain]:
    """Group disambiguated highlight words into initial chains.

    Words are taken in document order; a word joins the first chain that
    already holds one of the partners it was linked to while being
    disambiguated, otherwise it opens a new chain.
    """
    chains: list[LexicalChain] = []
    for rw in sorted(resolved, key=lambda r: (r.word.sentence_index, r.word.token_index)):
        member = ChainMember(
            rw.word.lemma, rw.word.sentence_index, rw.chosen, rw.sense_number,
            rw.word.token_index, rw.word.pos,
        )
        links = set(rw.links)
        for chain in chains:
            if any(m.key in links for m in chain.members):
                chain.add(member)
                break
        else:
            chains.append(LexicalChain(len(chains), [member]))
    return chains


def _options(kb, words: list[CandidateWord]):
    """(pos rank, sense, sense_number, gloss) choices for one token."""
    out = []
    for rank, w in enumerate(words):
        if w.pos == NAME:
            gloss = kb.wiki_abstract(w.lemma)
            if gloss:
                out.append((rank, w, None, 0, tuple(gloss)))
            continue
        for entry in kb.sense_entries(w.lemma, w.pos):
            out.append((rank, w, entry.sense_id, entry.sense_number, kb.gloss_tokens(entry.sense_id)))
    return out


def extend_chains(
    chains: list[LexicalChain],
    remaining: Iterable[CandidateWord],
    kb,
    params: LeskParams = LeskParams(),
) -> list[LexicalChain]:
    """Attach remaining candidate words to the chain they fit best.

    For each word (document order) the best pair score over every chain
    member and every sense of the word is found. The word joins that chain,
    with the winning sense, when the score exceeds ``params.threshold``.
    Ties go to the lower chain id, then the lower sense number. Words that
    joined become comparison targets for later words.
    """
    by_token: dict[tuple[int, int], list[CandidateWord]] = defaultdict(list)
    for w in remaining:
        by_token[(w.sentence_index, w.token_index)].append(w)
    placed = {m.key for c in chains for m in c.members}
    member_gloss: dict[tuple, Sequence[str]] = {}
    cache: dict[tuple, int] = {}

    for key in sorted(by_token):
        if key in placed:
            continue
        options = _options(kb, by_token[key])
        if not options:
            continue
        best = None
        for chain in chains:
            seen = set()
            for m in chain.members:
                mkey = (m.sense, m.lemma)
                if mkey in seen:
                    continue
                seen.add(mkey)
                if mkey not in member_gloss:
                    member_gloss[mkey] = gloss_for(kb, m.sense, m.lemma) or ()
                mg = member_gloss[mkey]
                for rank, w, sense, number, gloss in options:
                    ck = (sense, w.lemma, m.sense, m.lemma)
                    score = cache.get(ck)
                    if score is None:
                        score = pair_score(gloss, mg, w.lemma, m.lemma, params)
                        cache[ck] = score
                    cand = (-score, chain.id, number, rank)
                    if best is None or cand < best[0]:
                        best = (cand, chain, w, sense, number)
        if best is not None and -best[0][0] > params.threshold:
            _, chain, w, sense, number = best
            chain.add(ChainMember(w.lemma, w.sentence_index, sense, number, w.token_index, w.pos))
            placed.add(key)
    return chains


def prune_weak(chains: list[LexicalChain], tolerance: float = 1e-12) -> list[LexicalChain]:
    """Keep chains scoring at least the mean; never return an empty list."""
    if not chains:
        return []
    mean = sum(c.score for c in chains) / len(chains)
    kept = [c for c in chains if c.score >= mean - tolerance]
    if not kept:
        kept = [max(chains, key=lambda c: (c.score, -c.id))]
    return kept
