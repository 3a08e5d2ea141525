"""Streaming parser for plain-text cast-list dump files.

The dumps pair a performer column with one title entry per line:

    Bridges, Jeff        The Big Lebowski (1998)  [The Dude]  <1>
                         "Show Title" (1990) {Episode (1991) (#2.3)}  [Host]

A performer block is a name line, any number of tab-indented continuation
lines, and a blank separator. Each title entry carries the title, a
parenthesized year (or "????"), an optional braced episode segment,
parenthesized attributes such as (TV) or (as Stage Name), an optional
bracketed role, and an optional angle-bracketed billing position. Quoted
titles mark television series; the quotes are stripped. Input may be gzip
compressed (detected by magic bytes, never by file name) and is decoded as
Latin-1, the historical dump encoding, so no byte sequence is rejected.

The data region starts after a banner line ("THE ACTORS LIST" / "THE
ACTRESSES LIST"), a ==== or ---- rule line, and the "Name  Titles" column
header; it ends at the first long dashed line or a line starting with
"SUBMITTING UPDATES". Records listed under an alternative name "(as ...)"
and records without a usable year are counted but not emitted; lines that
do not match the grammar are counted as malformed and skipped, never fatal.
"""

from __future__ import annotations

import gzip
import io
import re
from dataclasses import dataclass
from typing import BinaryIO, Iterator

from .errors import FormatError
from .records import MAX_YEAR, MIN_YEAR, Gender

GZIP_MAGIC = b"\x1f\x8b"

_BANNER = re.compile(r"THE ACT(ORS|RESSES) LIST")
_COLUMN_HEADER = re.compile(r"Name\s+Titles")
_FOOTER_DASHES = "-" * 29
_FOOTER_LITERAL = "SUBMITTING UPDATES"

_NAME_SPLIT = re.compile(r"\t+")
_YEAR_GROUP = re.compile(r"\((\d{4}|\?\?\?\?)(?:/[IVXL]+)?\)")
_EPISODE_DATE = re.compile(r"\((\d{4})(?:-\d\d-\d\d)?\)")

_SEG_EPISODE = re.compile(r"\{([^}]*)\}")
_SEG_ATTRIBUTE = re.compile(r"\(([^()]*)\)")
_SEG_ROLE = re.compile(r"\[([^\]]*)\]")
_SEG_BILLING = re.compile(r"<(\d+)>")
_SEG_SPACE = re.compile(r"[ \t]+")

ALT_NAME_PREFIX = "as "


class ListFormatError(FormatError):
    """Input does not look like a cast-list dump, or a line is malformed."""


@dataclass(frozen=True, slots=True)
class TitleEntry:
    """Parsed form of a single title expression."""

    title: str
    year: int | None
    is_series: bool
    episode: str | None
    attributes: tuple[str, ...]
    role: str | None
    billing: int | None


@dataclass(frozen=True, slots=True)
class RawAppearance:
    """One raw appearance record emitted per accepted title line."""

    performer: str
    title: str
    year: int
    is_episode: bool
    raw_role: str | None
    billing: int | None
    attributes: tuple[str, ...]
    gender: Gender


@dataclass(slots=True)
class ParseReport:
    """Exact accounting of every title line in the data region."""

    records_emitted: int = 0
    lines_skipped_malformed: int = 0
    records_excluded_alternative_name: int = 0
    records_excluded_no_year: int = 0

    @property
    def title_lines(self) -> int:
        return (
            self.records_emitted
            + self.lines_skipped_malformed
            + self.records_excluded_alternative_name
            + self.records_excluded_no_year
        )


def parse_title_entry(text: str) -> TitleEntry:
    """Parse one title expression; raises ListFormatError when malformed."""
    match = _YEAR_GROUP.search(text)
    if match is None:
        raise ListFormatError(f"no year group in title entry: {text!r}")
    title = text[: match.start()].strip()
    is_series = len(title) >= 2 and title.startswith('"') and title.endswith('"')
    if is_series:
        title = title[1:-1].strip()
    if not title:
        raise ListFormatError(f"empty title in entry: {text!r}")
    year = None if match.group(1) == "????" else int(match.group(1))

    episode: str | None = None
    attributes: list[str] = []
    role: str | None = None
    billing: int | None = None
    pos = match.end()
    while pos < len(text):
        space = _SEG_SPACE.match(text, pos)
        if space:
            pos = space.end()
            continue
        if seg := _SEG_EPISODE.match(text, pos):
            if episode is not None:
                raise ListFormatError(f"repeated episode segment: {text!r}")
            episode = seg.group(1)
        elif seg := _SEG_ATTRIBUTE.match(text, pos):
            attributes.append(seg.group(1))
        elif seg := _SEG_ROLE.match(text, pos):
            if role is not None:
                raise ListFormatError(f"repeated role segment: {text!r}")
            role = seg.group(1)
        elif seg := _SEG_BILLING.match(text, pos):
            if billing is not None:
                raise ListFormatError(f"repeated billing segment: {text!r}")
            billing = int(seg.group(1))
            if billing < 1:
                raise ListFormatError(f"billing below 1: {text!r}")
        else:
            raise ListFormatError(f"unparseable segment at column {pos}: {text!r}")
        pos = seg.end()

    return TitleEntry(
        title=title,
        year=year,
        is_series=is_series,
        episode=episode,
        attributes=tuple(attributes),
        role=role,
        billing=billing,
    )


def episode_year(entry: TitleEntry) -> int | None:
    """Year to count an entry under: the episode's own date wins over the
    series/film year."""
    if entry.episode is not None:
        match = _EPISODE_DATE.search(entry.episode)
        if match:
            return int(match.group(1))
    return entry.year


def _text_stream(stream: BinaryIO) -> io.TextIOWrapper:
    """Wrap a binary stream as Latin-1 text, decompressing gzip input."""
    buffered = stream if hasattr(stream, "peek") else io.BufferedReader(stream)
    if buffered.peek(2)[:2] == GZIP_MAGIC:
        binary: io.BufferedIOBase = gzip.GzipFile(fileobj=buffered)  # type: ignore[assignment]
    else:
        binary = buffered
    return io.TextIOWrapper(binary, encoding="latin-1")


def _skip_header(lines: Iterator[str]) -> None:
    """Advance past the banner / rule / column-header sentinel sequence."""
    saw_banner = False
    saw_rule = False
    for line in lines:
        if not saw_banner:
            if _BANNER.search(line):
                saw_banner = True
            continue
        if not line.strip():
            continue
        if not saw_rule:
            if line.startswith("====") or line.startswith("----"):
                saw_rule = True
            else:
                # Not the sentinel sequence after all; start over.
                saw_banner = bool(_BANNER.search(line))
            continue
        if _COLUMN_HEADER.search(line):
            return
        saw_banner = bool(_BANNER.search(line))
        saw_rule = False
    missing = "banner" if not saw_banner else ("rule line" if not saw_rule else "column header")
    raise ListFormatError(
        f"data region not found: missing {missing} sentinel "
        "(expected banner matching 'THE ACT(OR|RESS)ES LIST', a ==== or ---- "
        "rule line, then a 'Name  Titles' column header)"
    )


def _is_footer(line: str) -> bool:
    return line.startswith(_FOOTER_DASHES) or line.startswith(_FOOTER_LITERAL)


def parse_list_stream(
    stream: BinaryIO, gender: Gender
) -> tuple[Iterator[RawAppearance], ParseReport]:
    """Parse a dump, yielding one RawAppearance per accepted title line.

    Returns the record iterator together with its live ParseReport; the
    report counters are final once the iterator is exhausted. Raises
    ListFormatError (on first iteration) if the header sentinel never
    appears; I/O errors from the underlying stream propagate.
    """
    report = ParseReport()
    return _records(stream, gender, report), report


def parse_list_file(
    path: str, gender: Gender
) -> tuple[Iterator[RawAppearance], ParseReport]:
    """Open a dump file (gzip detected by content, not name) and parse it.

    The returned iterator owns the file handle and closes it when exhausted
    or closed.
    """
    handle = open(path, "rb")
    report = ParseReport()

    def records() -> Iterator[RawAppearance]:
        with handle:
            yield from _records(handle, gender, report)

    return records(), report


def _records(
    stream: BinaryIO, gender: Gender, report: ParseReport
) -> Iterator[RawAppearance]:
    lines = iter(_text_stream(stream))
    _skip_header(lines)
    performer: str | None = None
    expect_underline = True
    for line in lines:
        line = line.rstrip("\n")
        if expect_underline:
            # The column header is usually underlined ("----  ------");
            # consume that trailer before treating lines as data.
            expect_underline = False
            if not _is_footer(line) and (
                line.startswith("----") or line.startswith("====")
            ):
                continue
        if _is_footer(line):
            return
        if not line.strip():
            performer = None
            continue
        if line.startswith("\t"):
            entry_text = line.lstrip("\t")
            if performer is None:
                report.lines_skipped_malformed += 1
                continue
        else:
            split = _NAME_SPLIT.search(line)
            if split is None or split.start() == 0:
                report.lines_skipped_malformed += 1
                continue
            performer = line[: split.start()]
            entry_text = line[split.end() :]
        try:
            entry = parse_title_entry(entry_text)
        except ListFormatError:
            report.lines_skipped_malformed += 1
            continue
        if any(a.startswith(ALT_NAME_PREFIX) for a in entry.attributes):
            report.records_excluded_alternative_name += 1
            continue
        year = episode_year(entry)
        if year is None or not MIN_YEAR <= year <= MAX_YEAR:
            report.records_excluded_no_year += 1
            continue
        report.records_emitted += 1
        yield RawAppearance(
            performer=performer,
            title=entry.title,
            year=year,
            is_episode=entry.episode is not None,
            raw_role=entry.role,
            billing=entry.billing,
            attributes=entry.attributes,
            gender=gender,
        )
