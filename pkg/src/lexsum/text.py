"""Text ingest: paragraphs, sentences, tokens and candidate words."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from nltk.stem.porter import PorterStemmer

from .errors import EmptyDocument

NOUN = "noun"
VERB = "verb"

ABBREVIATIONS = frozenset(
    [
        "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.",
        "u.s.", "u.k.", "u.n.", "e.g.", "i.e.", "etc.", "vs.", "inc.",
        "ltd.", "co.", "corp.", "no.", "gen.", "gov.", "sen.", "rep.",
    ]
)

_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")
_BOUNDARY = re.compile(r"[.!?]+[\"')\]]*(?=\s+[\"'(\[]*[A-Z0-9])")
_WORD = re.compile(r"[^\W\d_]+")

_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    stem: str
    is_stopword: bool


@dataclass(frozen=True)
class Sentence:
    index: int
    raw: str
    tokens: tuple[Token, ...]

    @property
    def word_count(self) -> int:
        return len(self.raw.split())


@dataclass(frozen=True)
class Paragraph:
    index: int
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Document:
    paragraphs: tuple[Paragraph, ...]
    sentences: tuple[Sentence, ...]
    source_id: str = ""

    @property
    def word_count(self) -> int:
        return sum(s.word_count for s in self.sentences)

    def highlight_indices(self) -> set[int]:
        """Global indices of every paragraph's highlight sentences."""
        out: set[int] = set()
        for para in self.paragraphs:
            out |= highlight_sentences(para)
        return out


@dataclass(frozen=True, order=True)
class CandidateWord:
    sentence_index: int
    token_index: int
    lemma: str
    pos: str
    surface: str = ""


# --------------------------------------------------------------------------
# stopwords and stemming


def read_stopwords(path: str | Path) -> frozenset[str]:
    """One lowercase word per line; blank lines and ``#`` comments ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    ref = resources.files("lexsum").joinpath("data/smart_english.stop")
    with resources.as_file(ref) as path:
        return read_stopwords(path)


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    return _porter.stem(word)


# --------------------------------------------------------------------------
# tokenizing and splitting


def tokenize(sentence: str, stopwords: frozenset[str] | None = None) -> list[Token]:
    if stopwords is None:
        stopwords = default_stopwords()
    tokens = []
    for m in _WORD.finditer(sentence):
        surface = m.group()
        norm = surface.lower()
        tokens.append(Token(surface, norm, stem(norm), norm in stopwords))
    return tokens


def _split_paragraph(text: str) -> list[str]:
    text = " ".join(text.split())
    sentences = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        if m.group().startswith(".") and not m.group().startswith(".."):
            word = text[start: m.start() + 1].rsplit(None, 1)[-1]
            if word.lower().lstrip("\"'([") in ABBREVIATIONS:
                continue
        sentences.append(text[start: m.end()].strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return [s for s in sentences if s]


def split_sentences(
    raw_text: str,
    source_id: str = "",
    stopwords: frozenset[str] | None = None,
) -> Document:
    """Parse raw text into a :class:`Document`.

    Paragraphs are blank-line separated blocks. A sentence ends at ``.``,
    ``!`` or ``?`` followed by whitespace and an uppercase letter or digit,
    unless the period closes a known abbreviation.
    """
    if not raw_text or not raw_text.strip():
        raise EmptyDocument(f"document {source_id!r} is empty")
    paragraphs = []
    sentences: list[Sentence] = []
    for block in _PARAGRAPH_BREAK.split(raw_text):
        own = []
        for raw in _split_paragraph(block):
            sent = Sentence(len(sentences), raw, tuple(tokenize(raw, stopwords)))
            sentences.append(sent)
            own.append(sent)
        if own:
            paragraphs.append(Paragraph(len(paragraphs), tuple(own)))
    if not sentences:
        raise EmptyDocument(f"no sentence found in document {source_id!r}")
    return Document(tuple(paragraphs), tuple(sentences), source_id)


def highlight_sentences(paragraph: Paragraph) -> set[int]:
    """First, middle and last sentence of a paragraph, as global indices."""
    sents = paragraph.sentences
    if not sents:
        raise ValueError("paragraph has no sentences")
    n = len(sents)
    return {sents[0].index, sents[(n - 1) // 2].index, sents[-1].index}


# --------------------------------------------------------------------------
# candidate words


def lemma_forms(word: str) -> list[str]:
    """The token itself followed by suffix-stripped lookup forms, in order."""
    forms = [word]

    def add(form):
        if len(form) >= 2 and form not in forms:
            forms.append(form)

    if word.endswith("ies"):
        add(word[:-3] + "y")
    if word.endswith("es"):
        add(word[:-2])
    if word.endswith("s") and not word.endswith("ss"):
        add(word[:-1])
    for suffix in ("ing", "ed"):
        if word.endswith(suffix):
            base = word[: -len(suffix)]
            add(base)
            add(base + "e")
            if len(base) >= 2 and base[-1] == base[-2]:
                add(base[:-1])
            if suffix == "ed" and base.endswith("i"):
                add(base[:-1] + "y")
    return forms


def lookup_lemma(word: str, pos: str, kb) -> str | None:
    for form in lemma_forms(word):
        if kb.has_lemma(form, pos):
            return form
    return None


def extract_candidates(doc: Document, kb) -> list[CandidateWord]:
    """Nouns and verbs of ``doc`` that resolve to a knowledge-base lemma.

    One candidate is emitted per (token, part of speech) that resolves, so a
    token such as "banks" may yield both a noun and a verb candidate.
    """
    out = []
    for sent in doc.sentences:
        for t_idx, tok in enumerate(sent.tokens):
            if tok.is_stopword:
                continue
            for pos in (NOUN, VERB):
                lemma = lookup_lemma(tok.normalized, pos, kb)
                if lemma is not None:
                    out.append(CandidateWord(sent.index, t_idx, lemma, pos, tok.surface))
    return out


def fallback_words(doc: Document, kb) -> list[CandidateWord]:
    """Capitalized tokens unknown to the knowledge base.

    These are the proper-name candidates for which an encyclopedia abstract
    may stand in for a gloss. Their ``pos`` is ``"name"``.
    """
    out = []
    for sent in doc.sentences:
        for t_idx, tok in enumerate(sent.tokens):
            if tok.is_stopword or not tok.surface[:1].isupper():
                continue
            if any(lookup_lemma(tok.normalized, pos, kb) for pos in (NOUN, VERB)):
                continue
            out.append(CandidateWord(sent.index, t_idx, tok.normalized, "name", tok.surface))
    return out


def iter_tokens(doc: Document) -> Iterable[Token]:
    for sent in doc.sentences:
        yield from sent.tokens
