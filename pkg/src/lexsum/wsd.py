"""Local word sense disambiguation over depth-limited sense trees.

Every candidate word gets a tree whose first level holds all of its senses;
deeper levels follow the configured relations (hypernym by default). Two
words of the same sentence are disambiguated against each other by counting,
for each sense of one word, how many first-level senses of the other word
occur in that sense's subtree.

When no sense of a word reaches the other word this way, the gloss
comparator of :mod:`lexsum.chains` gets a say before falling back to the most
frequent sense (``gloss_fallback=False`` disables that step).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .chains import LeskParams, pair_score
from .errors import UnknownWord
from .text import CandidateWord, Document, extract_candidates

PAIR_OVERLAP = "pair_overlap"
GLOSS_OVERLAP = "gloss_overlap"
FIRST_SENSE = "first_sense"

# stronger evidence wins when one word is paired several times
_METHOD_RANK = {PAIR_OVERLAP: 2, GLOSS_OVERLAP: 1, FIRST_SENSE: 0}


@dataclass
class SenseNode:
    sense: int
    children: list["SenseNode"] = field(default_factory=list)

    def iter_senses(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node.sense
            stack.extend(reversed(node.children))

    def node_count(self) -> int:
        return sum(1 for _ in self.iter_senses())

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)


@dataclass
class SenseTree:
    word: CandidateWord
    level1: list[SenseNode]
    depth_limit: int

    def node_count(self) -> int:
        """Nodes including the root."""
        return 1 + sum(n.node_count() for n in self.level1)

    def height(self) -> int:
        """Levels including the root."""
        return 1 + max((n.height() for n in self.level1), default=0)

    def level1_senses(self) -> list[int]:
        return [n.sense for n in self.level1]


@dataclass(frozen=True)
class ResolvedWord:
    word: CandidateWord
    chosen: int
    method: str
    sense_number: int
    score: int = 0
    links: tuple[tuple[int, int], ...] = ()


def _expand(kb, sense: int, level: int, depth: int, relations, path) -> SenseNode:
    node = SenseNode(sense)
    if level >= depth:
        return node
    for relation in relations:
        for target in kb.related(sense, relation):
            if target in path:
                continue
            node.children.append(
                _expand(kb, target, level + 1, depth, relations, path | {target})
            )
    return node


def build_sense_tree(
    word: CandidateWord, kb, depth: int, relations: Sequence[str] | None = None
) -> SenseTree:
    """Sense tree of ``word``; level 1 holds its senses, ``depth`` levels below the root."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    relations = tuple(relations) if relations is not None else kb.relations
    senses = kb.senses(word.lemma, word.pos)
    if not senses:
        raise UnknownWord(f"{word.lemma!r} has no {word.pos} senses")
    level1 = [_expand(kb, s, 1, depth, relations, frozenset([s])) for s in senses]
    return SenseTree(word, level1, depth)


def tree_overlap(subtree: SenseNode | Iterable[int], b_level1) -> int:
    """Distinct sense ids found both in ``subtree`` and in ``b_level1``."""
    ids = subtree.iter_senses() if isinstance(subtree, SenseNode) else subtree
    return len(set(ids) & set(b_level1))


class _Trees:
    """Per-call memo of subtree sense sets, keyed by word."""

    def __init__(self, kb, depth, relations):
        self.kb = kb
        self.depth = depth
        self.relations = tuple(relations) if relations is not None else kb.relations
        self._sets = {}

    def subtree_sets(self, word: CandidateWord) -> list[frozenset[int]]:
        key = (word.lemma, word.pos)
        if key not in self._sets:
            tree = build_sense_tree(word, self.kb, self.depth, self.relations)
            self._sets[key] = [frozenset(n.iter_senses()) for n in tree.level1]
        return self._sets[key]


def _choose(kb, word, other, own_sets, other_senses, params, gloss_fallback):
    """(index of chosen sense, method, evidence score) for ``word`` vs ``other``."""
    other_level1 = set(other_senses)
    overlaps = [len(s & other_level1) for s in own_sets]
    best = max(overlaps)
    if best > 0:
        return overlaps.index(best), PAIR_OVERLAP, best
    if gloss_fallback:
        own_senses = kb.senses(word.lemma, word.pos)
        scores = [
            max(
                pair_score(kb.gloss_tokens(s), kb.gloss_tokens(t), word.lemma, other.lemma, params)
                for t in other_senses
            )
            for s in own_senses
        ]
        best = max(scores)
        if best > params.threshold:
            return scores.index(best), GLOSS_OVERLAP, best
    return 0, FIRST_SENSE, 0


def _pair(w1, w2, kb, trees: _Trees, params, gloss_fallback):
    s1 = kb.senses(w1.lemma, w1.pos)
    s2 = kb.senses(w2.lemma, w2.pos)
    if not s1:
        raise UnknownWord(f"{w1.lemma!r} has no {w1.pos} senses")
    if not s2:
        raise UnknownWord(f"{w2.lemma!r} has no {w2.pos} senses")
    i1, m1, e1 = _choose(kb, w1, w2, trees.subtree_sets(w1), s2, params, gloss_fallback)
    i2, m2, e2 = _choose(kb, w2, w1, trees.subtree_sets(w2), s1, params, gloss_fallback)
    entries1 = kb.sense_entries(w1.lemma, w1.pos)
    entries2 = kb.sense_entries(w2.lemma, w2.pos)
    linked = e1 > 0 or e2 > 0
    r1 = ResolvedWord(w1, s1[i1], m1, entries1[i1].sense_number, e1,
                      ((w2.sentence_index, w2.token_index),) if linked else ())
    r2 = ResolvedWord(w2, s2[i2], m2, entries2[i2].sense_number, e2,
                      ((w1.sentence_index, w1.token_index),) if linked else ())
    return r1, r2


def disambiguate_pair(
    w1: CandidateWord,
    w2: CandidateWord,
    kb,
    depth: int = 3,
    params: LeskParams = LeskParams(),
    relations: Sequence[str] | None = None,
    gloss_fallback: bool = True,
) -> tuple[ResolvedWord, ResolvedWord]:
    """Choose a sense for each of two words that share a sentence.

    Ties on equal evidence go to the lower sense number.
    """
    trees = _Trees(kb, depth, relations)
    return _pair(w1, w2, kb, trees, params, gloss_fallback)


def _first_sense(kb, word: CandidateWord) -> ResolvedWord:
    entry = kb.sense_entries(word.lemma, word.pos)[0]
    return ResolvedWord(word, entry.sense_id, FIRST_SENSE, entry.sense_number, 0)


def _rank(rw: ResolvedWord):
    return (_METHOD_RANK[rw.method], rw.score, -rw.sense_number)


def disambiguate_highlights(
    doc: Document,
    kb,
    depth: int = 3,
    params: LeskParams = LeskParams(),
    relations: Sequence[str] | None = None,
    gloss_fallback: bool = True,
    candidates: list[CandidateWord] | None = None,
) -> list[ResolvedWord]:
    """Resolve every candidate word of the highlight sentences.

    Each unordered pair of distinct tokens in a highlight sentence is
    disambiguated; a word keeps the sense from its strongest pairing. A
    token that resolves both as noun and as verb keeps the stronger reading,
    the noun on ties. Words without a partner get their first sense.
    """
    if candidates is None:
        candidates = extract_candidates(doc, kb)
    highlights = doc.highlight_indices()
    by_sentence: dict[int, list[CandidateWord]] = {}
    for w in candidates:
        if w.sentence_index in highlights and w.pos != "name":
            by_sentence.setdefault(w.sentence_index, []).append(w)

    trees = _Trees(kb, depth, relations)
    out: list[ResolvedWord] = []
    for s_idx in sorted(by_sentence):
        words = by_sentence[s_idx]
        best: dict[CandidateWord, ResolvedWord] = {w: _first_sense(kb, w) for w in words}
        links: dict[CandidateWord, set] = {w: set() for w in words}
        for w1, w2 in combinations(words, 2):
            if w1.token_index == w2.token_index:
                continue
            r1, r2 = _pair(w1, w2, kb, trees, params, gloss_fallback)
            for w, r in ((w1, r1), (w2, r2)):
                links[w].update(r.links)
                if _rank(r) > _rank(best[w]):
                    best[w] = r
        per_token: dict[int, ResolvedWord] = {}
        for w in words:
            r = best[w]
            current = per_token.get(w.token_index)
            if current is None or _rank(r) > _rank(current):
                per_token[w.token_index] = r
        for t_idx in sorted(per_token):
            r = per_token[t_idx]
            partner_links = tuple(sorted(links[r.word]))
            out.append(ResolvedWord(r.word, r.chosen, r.method, r.sense_number, r.score,
                                    partner_links))
    return out
