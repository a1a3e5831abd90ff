"""Offline encyclopedia abstracts from a MediaWiki XML export.

The export is streamed with expat in fixed-size chunks, and at most
``max_text_chars`` characters of each page body are kept, so memory stays
bounded no matter how large the dump or any single page is.
"""
from __future__ import annotations

import bz2
import gzip
import re
from collections import deque
from pathlib import Path
from typing import Iterable, Iterator
from xml.parsers import expat

from .text import default_stopwords, tokenize

CHUNK_SIZE = 1 << 16
MAX_TEXT_CHARS = 1 << 17

_COMMENT = re.compile(r"<!--.*?(?:-->|$)", re.S)
_REF = re.compile(r"<ref[^>/]*/>|<ref[^>]*>.*?(?:</ref>|$)", re.S | re.I)
_TEMPLATE = re.compile(r"\{\{[^{}]*\}\}")
_TABLE = re.compile(r"\{\|(?:(?!\{\|).)*?\|\}", re.S)
_LINK = re.compile(r"\[\[([^\[\]]*)\]\]")
_EXTERNAL = re.compile(r"\[(?:https?|ftp)://[^\s\]]+\s*([^\]]*)\]")
_TAG = re.compile(r"<[^>]+>")
_HEADING = re.compile(r"^=+.*?=+\s*$", re.M)
_EMPHASIS = re.compile(r"'{2,}")
_DROP_NAMESPACES = ("file:", "image:", "category:", "media:")


def _local(name: str) -> str:
    return name.rsplit("}", 1)[-1].rsplit(":", 1)[-1]


def _open_binary(path: Path):
    if path.suffix == ".bz2":
        return bz2.open(path, "rb")
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return open(path, "rb")


def iter_pages(
    path: str | Path, max_text_chars: int = MAX_TEXT_CHARS
) -> Iterator[tuple[str, str]]:
    """Stream ``(title, text)`` for every ``<page>`` of a MediaWiki export.

    ``text`` is the body of the page's last revision, truncated to
    ``max_text_chars``.
    """
    ready: deque[tuple[str, str]] = deque()
    stack: list[str] = []
    page: dict = {}

    def start(name, attrs):
        name = _local(name)
        stack.append(name)
        if name == "page":
            page.clear()
            page["title"] = []
            page["text"] = []
            page["size"] = 0
        elif name == "text" and "page" in stack:
            page["text"] = []
            page["size"] = 0

    def end(name):
        name = _local(name)
        stack.pop()
        if name == "page" and page:
            ready.append(("".join(page["title"]).strip(), "".join(page["text"])))
            page.clear()

    def chars(data):
        if not stack or not page:
            return
        here = stack[-1]
        if here == "title" and len(stack) >= 2 and stack[-2] == "page":
            page["title"].append(data)
        elif here == "text" and "revision" in stack:
            room = max_text_chars - page["size"]
            if room > 0:
                piece = data[:room]
                page["text"].append(piece)
                page["size"] += len(piece)

    parser = expat.ParserCreate()
    parser.buffer_text = True
    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    with _open_binary(Path(path)) as fh:
        while True:
            chunk = fh.read(CHUNK_SIZE)
            parser.Parse(chunk, not chunk)
            while ready:
                yield ready.popleft()
            if not chunk:
                break


def _strip_nested(pattern: re.Pattern, text: str, repl="") -> str:
    while True:
        new = pattern.sub(repl, text)
        if new == text:
            return text
        text = new


def _link_text(m: re.Match) -> str:
    inner = m.group(1)
    if inner.lower().startswith(_DROP_NAMESPACES):
        return ""
    return inner.rsplit("|", 1)[-1]


def strip_markup(text: str) -> str:
    """Reduce wikitext to plain prose."""
    text = _COMMENT.sub("", text)
    text = _REF.sub("", text)
    text = _strip_nested(_TEMPLATE, text)
    # a template cut off by truncation swallows the rest of the page
    cut = text.find("{{")
    if cut >= 0:
        text = text[:cut]
    text = _strip_nested(_TABLE, text)
    text = _strip_nested(_LINK, text, _link_text)
    text = _EXTERNAL.sub(lambda m: m.group(1), text)
    text = _TAG.sub("", text)
    text = _HEADING.sub("", text)
    text = _EMPHASIS.sub("", text)
    return text


def first_paragraph(text: str) -> str:
    """First blank-line-delimited block of prose in already-stripped text."""
    block: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "*#:;|!":
            if block:
                break
            continue
        block.append(line)
    return " ".join(block)


def extract_abstract(wikitext: str) -> str:
    return first_paragraph(strip_markup(wikitext))


class AbstractProvider:
    """Case-insensitive title to abstract lookup."""

    def __init__(self, abstracts: dict[str, str], stopwords: frozenset[str] | None = None):
        self._abstracts = {title.lower(): text for title, text in abstracts.items() if text}
        self.stopwords = stopwords if stopwords is not None else default_stopwords()

    @classmethod
    def from_xml(
        cls,
        path: str | Path,
        titles: Iterable[str] | None = None,
        stopwords: frozenset[str] | None = None,
        max_text_chars: int = MAX_TEXT_CHARS,
    ) -> "AbstractProvider":
        wanted = {t.lower() for t in titles} if titles is not None else None
        abstracts = {}
        for title, text in iter_pages(path, max_text_chars):
            key = title.lower()
            if wanted is not None and key not in wanted:
                continue
            if key in abstracts:
                continue
            abstract = extract_abstract(text)
            if abstract:
                abstracts[key] = abstract
        return cls(abstracts, stopwords)

    def __len__(self):
        return len(self._abstracts)

    def __contains__(self, title):
        return title.lower() in self._abstracts

    def abstract(self, title: str) -> str | None:
        return self._abstracts.get(title.lower())

    def tokens(self, title: str) -> list[str] | None:
        text = self.abstract(title)
        if text is None:
            return None
        return [t.normalized for t in tokenize(text, self.stopwords) if not t.is_stopword]
