import bz2
import tracemalloc

import pytest

from lexsum.wiki import AbstractProvider, extract_abstract, iter_pages, strip_markup
from lexsum.wordnet import load_wordnet

from conftest import MINIWN

WIKI = MINIWN / "wiki.xml"

PAGE = """  <page>
    <title>{title}</title>
    <ns>0</ns>
    <revision>
      <text xml:space="preserve">{text}</text>
    </revision>
  </page>
"""


def write_dump(path, pages, filler_bytes=0):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write('<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/">\n')
        for i, (title, text) in enumerate(pages):
            fh.write(PAGE.format(title=title, text=text))
            if i == 0 and filler_bytes:
                fh.write("  <page>\n    <title>Filler</title>\n    <revision>\n      <text>")
                line = "lorem ipsum dolor sit amet " * 40 + "\n"
                for _ in range(filler_bytes // len(line)):
                    fh.write(line)
                fh.write("</text>\n    </revision>\n  </page>\n")
        fh.write("</mediawiki>\n")


@pytest.fixture(scope="module")
def provider():
    return AbstractProvider.from_xml(WIKI)


def test_qazvin_tokens(provider):
    assert provider.tokens("Qazvin") == ["qazvin", "city", "iran"]
    assert provider.abstract("qazvin") == "Qazvin is a city in Iran."


def test_missing_title(provider):
    assert provider.tokens("Atlantis") is None
    assert "Atlantis" not in provider


def test_infobox_skipped(provider):
    assert provider.abstract("Millbrook") == "Millbrook is a small town on a river with a bank and a mill."
    assert "population" not in provider.tokens("Millbrook")


def test_pages_stream_in_order():
    assert [t for t, _ in iter_pages(WIKI)] == ["Qazvin", "Millbrook"]


def test_title_filter():
    p = AbstractProvider.from_xml(WIKI, titles={"qazvin"})
    assert len(p) == 1 and "Qazvin" in p


def test_kb_wiki_abstract(provider):
    kb = load_wordnet(MINIWN, abstracts=provider)
    assert kb.wiki_abstract("Qazvin") == ["qazvin", "city", "iran"]
    assert load_wordnet(MINIWN).wiki_abstract("Qazvin") is None


@pytest.mark.parametrize("wikitext,expected", [
    ("[[File:x.jpg|thumb|A caption]] Plain [[a|b]] and [[c]].", "Plain b and c."),
    ("Text<!-- hidden --> kept.<ref name=x/> End.", "Text kept. End."),
    ("{{a|{{b}}}}Body [http://x.org site] here.", "Body site here."),
    ('{| class="wikitable"\n| cell\n|}\nAfter table.', "After table."),
    ("== Heading ==\n\n* bullet\nFirst para.\n\nSecond.", "First para."),
    ("''Italic'' and '''bold'''.", "Italic and bold."),
    ("Kept text. {{unclosed template", "Kept text."),
])
def test_extract_abstract(wikitext, expected):
    assert extract_abstract(wikitext) == expected


def test_strip_markup_category_dropped():
    assert "Category" not in strip_markup("Body.[[Category:Towns]]")


def test_bz2_dump(tmp_path):
    plain = tmp_path / "d.xml"
    write_dump(plain, [("Qazvin", "'''Qazvin''' is a city in Iran.")])
    packed = tmp_path / "d.xml.bz2"
    packed.write_bytes(bz2.compress(plain.read_bytes()))
    assert AbstractProvider.from_xml(packed).tokens("Qazvin") == ["qazvin", "city", "iran"]


def test_text_is_capped(tmp_path):
    path = tmp_path / "big.xml"
    write_dump(path, [("Big", "word " * 50_000)])
    (title, text), = iter_pages(path, max_text_chars=1000)
    assert title == "Big" and len(text) == 1000


def test_multi_megabyte_filler_in_bounded_memory(tmp_path):
    path = tmp_path / "dump.xml"
    write_dump(path, [("Qazvin", "'''Qazvin''' is a city in Iran."),
                      ("Millbrook", "{{Infobox|x=1}}\nMillbrook is a town.")],
               filler_bytes=8 * 1024 * 1024)
    assert path.stat().st_size > 8 * 1024 * 1024
    tracemalloc.start()
    try:
        p = AbstractProvider.from_xml(path)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert p.tokens("Qazvin") == ["qazvin", "city", "iran"]
    assert p.tokens("Millbrook") == ["millbrook", "town"]
    assert "Filler" in p
    assert peak < 3 * 1024 * 1024, f"peak {peak} bytes"
