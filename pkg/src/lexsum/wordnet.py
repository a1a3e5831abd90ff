"""WordNet 3.0 relational (Prolog record) files as an in-memory sense graph.

Each record file holds one fact per line::

    s(102084071,1,'dog',n,1,42).
    g(102084071,'a member of the genus Canis ...').
    hyp(102084071,102083346).

Integer arguments are bare, strings are single quoted with ``''`` standing
for an embedded quote. Files may be plain (``wn_s.pl``) or gzipped
(``wn_s.pl.gz``).
"""
from __future__ import annotations

import gzip
import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConfigError, MissingFile, ParseError, UnknownSense
from .text import NOUN, VERB, default_stopwords, tokenize

log = logging.getLogger(__name__)

POS_NAMES = {"n": NOUN, "v": VERB, "a": "adj", "s": "adj", "r": "adv"}

# relation name -> (record predicate, traverse the edge backwards)
RELATIONS = {
    "hypernym": ("hyp", False),
    "hyponym": ("hyp", True),
    "instance_hypernym": ("ins", False),
    "instance_hyponym": ("ins", True),
    "member_meronym": ("mm", False),
    "member_holonym": ("mm", True),
    "substance_meronym": ("ms", False),
    "substance_holonym": ("ms", True),
    "part_meronym": ("mp", False),
    "part_holonym": ("mp", True),
    "entailment": ("ent", False),
    "cause": ("cs", False),
    "similar": ("sim", False),
}

_HEAD = re.compile(r"([a-z_]+)\(")
_ARG = re.compile(r"'((?:[^']|'')*)'|(-?\d+)|([a-z][a-z_]*)")


@dataclass(frozen=True)
class SenseEntry:
    sense_id: int
    lemma: str
    pos: str
    sense_number: int
    w_num: int = 1
    tag_count: int = 0


@dataclass(frozen=True)
class RelationEdge:
    source: int
    target: int
    relation: str


def parse_record(line: str) -> tuple[str, list]:
    """Split one ``pred(arg,...).`` line into its predicate and typed args.

    Raises ``ValueError`` with a short reason on malformed input.
    """
    line = line.strip()
    m = _HEAD.match(line)
    if not m:
        raise ValueError("expected 'predicate('")
    pred = m.group(1)
    pos = m.end()
    args: list = []
    while True:
        a = _ARG.match(line, pos)
        if not a:
            raise ValueError(f"bad argument at column {pos + 1}")
        if a.group(1) is not None:
            args.append(a.group(1).replace("''", "'"))
        elif a.group(2) is not None:
            args.append(int(a.group(2)))
        else:
            args.append(a.group(3))
        pos = a.end()
        if line.startswith(",", pos):
            pos += 1
            continue
        if line[pos:] == ").":
            return pred, args
        raise ValueError(f"expected ',' or ').' at column {pos + 1}")


def _record_path(directory: Path, name: str) -> Path | None:
    for candidate in (directory / f"wn_{name}.pl", directory / f"wn_{name}.pl.gz"):
        if candidate.is_file():
            return candidate
    return None


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def iter_records(path: Path, pred: str, arity: int) -> Iterator[tuple[int, list]]:
    """Yield ``(line_no, args)`` for every record in ``path``.

    Blank lines and ``%`` comment lines are skipped; anything else that does
    not parse as ``pred/arity`` raises :class:`ParseError`.
    """
    with _open_text(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            try:
                got, args = parse_record(stripped)
            except ValueError as exc:
                raise ParseError(path, line_no, f"{exc}: {stripped[:80]!r}") from None
            if got != pred or len(args) != arity:
                raise ParseError(
                    path, line_no, f"expected {pred}/{arity} record, got {got}/{len(args)}"
                )
            yield line_no, args


def _check_int(path, line_no, value, what):
    if not isinstance(value, int):
        raise ParseError(path, line_no, f"{what} must be an integer, got {value!r}")


class KnowledgeBase:
    """Immutable sense inventory, gloss store and relation graph.

    Lookups are keyed by lowercase lemma and part of speech (``"noun"``,
    ``"verb"``, ``"adj"``, ``"adv"``). Gloss token lists are computed on
    first use and cached.
    """

    def __init__(
        self,
        entries: Iterable[SenseEntry],
        glosses: dict[int, str],
        edges: dict[str, dict[int, list[int]]],
        stopwords: frozenset[str] | None = None,
        abstracts=None,
    ):
        self._index: dict[tuple[str, str], list[SenseEntry]] = defaultdict(list)
        self._by_synset: dict[int, list[SenseEntry]] = defaultdict(list)
        for entry in entries:
            self._index[(entry.lemma.lower(), entry.pos)].append(entry)
            self._by_synset[entry.sense_id].append(entry)
        for senses in self._index.values():
            senses.sort(key=lambda e: (e.sense_number, e.sense_id))
        self._index = dict(self._index)
        self._by_synset = dict(self._by_synset)
        self._glosses = glosses
        self._edges = edges
        self.stopwords = stopwords if stopwords is not None else default_stopwords()
        self.abstracts = abstracts
        self._gloss_cache: dict[int, tuple[str, ...]] = {}

    # -- inventory ---------------------------------------------------------

    @property
    def relations(self) -> tuple[str, ...]:
        return tuple(self._edges)

    @property
    def counts(self) -> dict[str, int]:
        out = {
            "senses": sum(len(v) for v in self._index.values()),
            "synsets": len(self.synset_ids()),
            "glosses": len(self._glosses),
        }
        for name, table in self._edges.items():
            out[name] = sum(len(v) for v in table.values())
        return out

    def synset_ids(self) -> set[int]:
        return set(self._by_synset) | set(self._glosses)

    def has_lemma(self, lemma: str, pos: str) -> bool:
        return (lemma.lower(), pos) in self._index

    def sense_entries(self, lemma: str, pos: str) -> list[SenseEntry]:
        return list(self._index.get((lemma.lower(), pos), ()))

    def senses(self, lemma: str, pos: str) -> list[int]:
        """Synset ids of ``lemma`` ordered by WordNet sense number."""
        return [e.sense_id for e in self._index.get((lemma.lower(), pos), ())]

    def sense_number(self, lemma: str, pos: str, sense_id: int) -> int:
        for e in self._index.get((lemma.lower(), pos), ()):
            if e.sense_id == sense_id:
                return e.sense_number
        raise UnknownSense(f"{sense_id} is not a sense of {lemma!r} ({pos})")

    def lemmas(self, sense_id: int) -> list[str]:
        return [e.lemma for e in sorted(self._by_synset.get(sense_id, ()), key=lambda e: e.w_num)]

    def pos_of(self, sense_id: int) -> str:
        entries = self._by_synset.get(sense_id)
        if not entries:
            raise UnknownSense(f"unknown synset {sense_id}")
        return entries[0].pos

    # -- glosses -------------------------------------------------------------

    def gloss(self, sense_id: int) -> str:
        try:
            return self._glosses[sense_id]
        except KeyError:
            raise UnknownSense(f"no gloss for synset {sense_id}") from None

    def gloss_tokens(self, sense_id: int) -> tuple[str, ...]:
        """Normalized gloss tokens with stopwords removed."""
        cached = self._gloss_cache.get(sense_id)
        if cached is None:
            cached = tuple(
                t.normalized for t in tokenize(self.gloss(sense_id), self.stopwords)
                if not t.is_stopword
            )
            self._gloss_cache[sense_id] = cached
        return cached

    def wiki_abstract(self, title: str) -> list[str] | None:
        if self.abstracts is None:
            return None
        return self.abstracts.tokens(title)

    # -- relations -----------------------------------------------------------

    def related(self, sense_id: int, relation: str = "hypernym") -> list[int]:
        try:
            table = self._edges[relation]
        except KeyError:
            raise ConfigError(f"relation {relation!r} was not loaded") from None
        return list(table.get(sense_id, ()))

    def edges(self, relation: str = "hypernym") -> Iterator[RelationEdge]:
        for src, targets in self._edges[relation].items():
            for dst in targets:
                yield RelationEdge(src, dst, relation)

    def check_integrity(self) -> list[RelationEdge]:
        """Edges whose endpoints are missing from the synset table."""
        known = self.synset_ids()
        return [
            e for name in self._edges for e in self.edges(name)
            if e.source not in known or e.target not in known
        ]


def load_wordnet(
    directory: str | Path,
    relations: Iterable[str] = ("hypernym",),
    stopwords: frozenset[str] | None = None,
    abstracts=None,
) -> KnowledgeBase:
    """Load sense, gloss and relation records from a WordNet Prolog directory.

    ``wn_s`` and ``wn_g`` are always required, as is the record file of every
    requested relation (``wn_hyp`` for the default hypernym relation).
    """
    directory = Path(directory)
    relations = tuple(dict.fromkeys(relations))
    for name in relations:
        if name not in RELATIONS:
            raise ConfigError(
                f"unknown relation {name!r}; choose from {', '.join(sorted(RELATIONS))}"
            )
    if not directory.is_dir():
        raise MissingFile(f"WordNet directory not found: {directory}")

    def require(name):
        path = _record_path(directory, name)
        if path is None:
            raise MissingFile(f"missing WordNet file wn_{name}.pl in {directory}")
        return path

    s_path = require("s")
    g_path = require("g")
    rel_paths = {name: require(RELATIONS[name][0]) for name in relations}

    entries = []
    for line_no, (sid, w_num, word, ss_type, sense_number, tag_count) in iter_records(
        s_path, "s", 6
    ):
        for value, what in ((sid, "synset_id"), (w_num, "w_num"),
                            (sense_number, "sense_number"), (tag_count, "tag_count")):
            _check_int(s_path, line_no, value, what)
        if ss_type not in POS_NAMES:
            raise ParseError(s_path, line_no, f"unknown ss_type {ss_type!r}")
        if not isinstance(word, str):
            raise ParseError(s_path, line_no, "word must be a quoted string")
        entries.append(SenseEntry(sid, word, POS_NAMES[ss_type], sense_number, w_num, tag_count))

    glosses = {}
    for line_no, (sid, text) in iter_records(g_path, "g", 2):
        _check_int(g_path, line_no, sid, "synset_id")
        if not isinstance(text, str):
            raise ParseError(g_path, line_no, "gloss must be a quoted string")
        glosses[sid] = text

    edges: dict[str, dict[int, list[int]]] = {}
    parsed: dict[str, list[tuple[int, int]]] = {}
    for name in relations:
        pred, reverse = RELATIONS[name]
        if pred not in parsed:
            path = rel_paths[name]
            pairs = []
            for line_no, (a, b) in iter_records(path, pred, 2):
                _check_int(path, line_no, a, "synset_id")
                _check_int(path, line_no, b, "synset_id")
                pairs.append((a, b))
            parsed[pred] = pairs
        table: dict[int, list[int]] = defaultdict(list)
        for a, b in parsed[pred]:
            if reverse:
                table[b].append(a)
            else:
                table[a].append(b)
        edges[name] = dict(table)

    kb = KnowledgeBase(entries, glosses, edges, stopwords, abstracts)
    log.info("loaded WordNet from %s: %s", directory, kb.counts)
    return kb
