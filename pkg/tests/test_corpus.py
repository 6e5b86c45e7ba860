import csv

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mesotext import corpus
from mesotext.corpus import FetchError, ManifestEntry, ManifestError, load_manifest, strip_boilerplate

WRAPPED = """Title: Something
Some licence text.
*** START OF THE PROJECT GUTENBERG EBOOK SOMETHING ***

First paragraph.

Second paragraph.

*** END OF THE PROJECT GUTENBERG EBOOK SOMETHING ***
More licence text.
"""


def test_strip_keeps_inner_body():
    assert strip_boilerplate(WRAPPED) == "First paragraph.\n\nSecond paragraph."


def test_strip_without_sentinels_is_trim(caplog):
    assert strip_boilerplate("  plain text \n") == "plain text"
    assert "no Project Gutenberg sentinels" in caplog.text


def test_strip_nested_sentinels():
    text = WRAPPED.replace("Second", "*** START OF THE PROJECT GUTENBERG EBOOK X ***\nSecond")
    once = strip_boilerplate(text)
    assert "START OF" not in once
    assert strip_boilerplate(once) == once


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=300))
def test_strip_idempotent(body):
    for text in (body, f"*** START OF THE PROJECT GUTENBERG EBOOK A ***\n{body}\n*** END OF THE PROJECT GUTENBERG EBOOK A ***"):
        once = strip_boilerplate(text)
        assert strip_boilerplate(once) == once


def _write(path, rows, header=("book_id", "author", "title", "source")):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def test_manifest_resolves_relative_sources(tmp_path):
    _write(tmp_path / "m.csv", [("a1", "A", "T", "a1.txt"), ("u", "B", "T", "https://x/y.txt")])
    entries = load_manifest(tmp_path / "m.csv")
    assert entries[0].source == str(tmp_path / "a1.txt")
    assert entries[1].is_url and entries[1].source == "https://x/y.txt"
    other = load_manifest(tmp_path / "m.csv", base_dir=tmp_path / "books")
    assert other[0].source == str(tmp_path / "books" / "a1.txt")


def test_manifest_rejects_duplicates_with_line(tmp_path):
    _write(tmp_path / "m.csv", [("a", "A", "T", "a.txt"), ("a", "A", "T", "b.txt")])
    with pytest.raises(ManifestError, match="line 3"):
        load_manifest(tmp_path / "m.csv")


def test_manifest_rejects_bad_header(tmp_path):
    _write(tmp_path / "m.csv", [("a", "A", "T", "a.txt")], header=("id", "author", "title", "source"))
    with pytest.raises(ManifestError, match="line 1"):
        load_manifest(tmp_path / "m.csv")


def test_bundled_manifests():
    books = load_manifest(corpus.bundled_manifest("twenty_authors"))
    assert len(books) == 100
    by_author = {}
    for e in books:
        by_author.setdefault(e.author, []).append(e)
    assert len(by_author) == 20
    assert all(len(v) == 5 for v in by_author.values())
    four = load_manifest(corpus.bundled_manifest("four_authors"))
    assert sorted({e.author.split()[-1] for e in four}) == ["Darwin", "Hardy", "Poe", "Twain"]
    assert {e.book_id for e in four} <= {e.book_id for e in books}


def test_fetch_caches_and_strips(tmp_path):
    src = tmp_path / "b.txt"
    src.write_text(WRAPPED)
    entry = ManifestEntry("b", "A", "T", str(src))
    book = corpus.fetch_text(entry, cache_dir=tmp_path / "cache")
    assert book.body.startswith("First paragraph.")
    src.unlink()
    # served from cache now
    assert corpus.fetch_text(entry, cache_dir=tmp_path / "cache").body == book.body


def test_fetch_missing_file(tmp_path):
    with pytest.raises(FetchError, match="missing"):
        corpus.fetch_text(ManifestEntry("b", "A", "T", str(tmp_path / "nope.txt")), cache_dir=tmp_path)


def test_decode_falls_back_to_latin1():
    assert corpus.decode_text("caf\xe9\r\n".encode("latin-1")) == "caf\xe9\n"
