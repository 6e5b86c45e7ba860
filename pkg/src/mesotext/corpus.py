"""Book manifests, fetching with an on-disk cache, and Gutenberg boilerplate removal."""

from __future__ import annotations

import csv
import logging
import os
import re
import tempfile
import urllib.request
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

log = logging.getLogger(__name__)

MANIFEST_HEADER = ("book_id", "author", "title", "source")
CACHE_ENV = "MESOTEXT_CACHE"

_START_RE = re.compile(r"start of", re.IGNORECASE)
_END_RE = re.compile(r"end of", re.IGNORECASE)
_PG_RE = re.compile(r"project\s+gutenberg", re.IGNORECASE)


class ManifestError(ValueError):
    pass


class FetchError(RuntimeError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    book_id: str
    author: str
    title: str
    source: str
    language: str = "en"

    @property
    def is_url(self) -> bool:
        return self.source.startswith(("http://", "https://", "ftp://"))


@dataclass(frozen=True)
class RawBook:
    manifest: ManifestEntry
    body: str
    fetched_at: datetime


def load_manifest(path, base_dir=None) -> list[ManifestEntry]:
    """Read a comma-separated manifest with header ``book_id,author,title,source``.

    An optional ``language`` column is accepted. Relative local sources are
    resolved against ``base_dir`` (default: the manifest's directory).
    """
    path = Path(path)
    base = Path(base_dir) if base_dir is not None else path.parent
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"{path}: line 1: empty manifest") from None
        header = [h.strip() for h in header]
        if tuple(header[:4]) != MANIFEST_HEADER or not set(header[4:]) <= {"language"}:
            raise ManifestError(
                f"{path}: line 1: expected header {','.join(MANIFEST_HEADER)}[,language], got {','.join(header)}"
            )
        entries: list[ManifestEntry] = []
        seen: dict[str, int] = {}
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ManifestError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}")
            fields = dict(zip(header, (c.strip() for c in row)))
            for name in ("book_id", "author", "source"):
                if not fields[name]:
                    raise ManifestError(f"{path}: line {lineno}: empty {name}")
            book_id = fields["book_id"]
            if book_id in seen:
                raise ManifestError(
                    f"{path}: line {lineno}: duplicate book_id {book_id!r} (first on line {seen[book_id]})"
                )
            seen[book_id] = lineno
            source = fields["source"]
            if not source.startswith(("http://", "https://", "ftp://")) and not os.path.isabs(source):
                source = str(base / source)
            entries.append(
                ManifestEntry(
                    book_id=book_id,
                    author=fields["author"],
                    title=fields["title"],
                    source=source,
                    language=fields.get("language") or "en",
                )
            )
    return entries


def write_manifest(entries, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_HEADER)
        for e in entries:
            writer.writerow([e.book_id, e.author, e.title, e.source])


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "mesotext"))


def atomic_write_bytes(path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_source(entry: ManifestEntry, timeout: float) -> bytes:
    if entry.is_url:
        try:
            with urllib.request.urlopen(entry.source, timeout=timeout) as resp:
                return resp.read()
        except OSError as exc:
            raise FetchError(f"{entry.book_id}: cannot download {entry.source}: {exc}") from exc
    try:
        return Path(entry.source).read_bytes()
    except FileNotFoundError:
        raise FetchError(f"{entry.book_id}: missing file {entry.source}") from None


def decode_text(data: bytes) -> str:
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError:
        text = data.decode("latin-1")
    return text.replace("\r\n", "\n").replace("\r", "\n")


def fetch_text(entry: ManifestEntry, cache_dir=None, timeout: float = 60.0) -> RawBook:
    """Return the stripped body of ``entry``, reading through ``cache_dir/<book_id>.txt``."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    cached = cache_dir / f"{entry.book_id}.txt"
    if cached.exists():
        data = cached.read_bytes()
    else:
        data = _read_source(entry, timeout)
        if not data.strip():
            raise FetchError(f"{entry.book_id}: empty body from {entry.source}")
        atomic_write_bytes(cached, data)
    body = strip_boilerplate(decode_text(data))
    if not body:
        raise FetchError(f"{entry.book_id}: empty body after boilerplate removal")
    return RawBook(manifest=entry, body=body, fetched_at=datetime.now(timezone.utc))


def _is_sentinel(line: str, marker: re.Pattern) -> bool:
    return bool(marker.search(line) and _PG_RE.search(line))


def strip_boilerplate(raw_text: str) -> str:
    """Keep the text between the outermost Gutenberg START/END sentinel lines.

    Sentinel lines nested inside the kept region are dropped as well, so the
    operation is idempotent. Text lacking either sentinel is returned trimmed.
    """
    lines = raw_text.split("\n")
    starts = [i for i, line in enumerate(lines) if _is_sentinel(line, _START_RE)]
    ends = [i for i, line in enumerate(lines) if _is_sentinel(line, _END_RE)]
    if not starts or not ends or starts[0] >= ends[-1]:
        if starts or ends:
            log.warning("unpaired Project Gutenberg sentinel; text left unchanged")
        else:
            log.warning("no Project Gutenberg sentinels found; text left unchanged")
        return raw_text.strip()
    inner = lines[starts[0] + 1 : ends[-1]]
    inner = [
        line for line in inner if not (_is_sentinel(line, _START_RE) or _is_sentinel(line, _END_RE))
    ]
    return "\n".join(inner).strip()


def bundled_manifest(name: str = "four_authors") -> Path:
    """Path of a manifest shipped with the package (``four_authors`` or ``twenty_authors``).

    Sources are bare ``<book_id>.txt`` names; pass ``base_dir`` (CLI ``--books-dir``)
    pointing at the directory holding your copies of the texts.
    """
    from importlib import resources

    return Path(str(resources.files("mesotext.data").joinpath(f"{name}.csv")))
