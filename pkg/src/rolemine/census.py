"""Comparison of on-screen gender shares against census occupation data.

Two CSV inputs drive a comparison: a census table (occupation, percent
female) and a mapping that pairs each census occupation with a role query
and match mode. Joining them yields CensusOccupation rows; compare() then
puts each occupation's on-screen female share next to its census share.
Output rows follow the mapping file's order, so a curated mapping doubles
as the report layout.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, NamedTuple

from .analytics import MatchMode, matches, role_totals
from .errors import FormatError
from .store import AggregateStore

CENSUS_COLUMNS = ("occupation", "percent_female")
MAPPING_COLUMNS = ("occupation", "query", "mode")

# Census queries are plain lookups; the suffix-filtering mode exists for
# profession keyword lists only.
QUERY_MODES = (MatchMode.SUBSTRING, MatchMode.EXACT)


class CensusFormatError(FormatError):
    """A census table or mapping file does not match its documented layout."""


class CensusOccupation(NamedTuple):
    """One occupation to compare: its census share plus the role query
    that stands in for it on screen."""

    occupation: str
    female_share: float
    query: str
    query_mode: MatchMode


class ComparisonRow(NamedTuple):
    occupation: str
    onscreen_p_f: float | None
    census_p_f: float
    delta: float | None


def load_census_table(source: str | Path | Iterable[str]) -> dict[str, float]:
    """Read a census table CSV into {occupation: female share}.

    Layout: header `occupation,percent_female`, one occupation per row,
    percent in [0, 100] (converted to a probability on load).
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _read_census(handle)
    return _read_census(source)


def _read_census(lines: Iterable[str]) -> dict[str, float]:
    reader = csv.reader(lines)
    _expect_header(reader, CENSUS_COLUMNS, "census table")
    shares: dict[str, float] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise CensusFormatError(
                f"census table row {reader.line_num}: expected 2 fields, got {len(row)}"
            )
        occupation = row[0].strip()
        if not occupation:
            raise CensusFormatError(f"census table row {reader.line_num}: empty occupation")
        if occupation.lower() in (key.lower() for key in shares):
            raise CensusFormatError(
                f"census table row {reader.line_num}: duplicate occupation {occupation!r}"
            )
        try:
            percent = float(row[1])
        except ValueError:
            raise CensusFormatError(
                f"census table row {reader.line_num}: {row[1]!r} is not a number"
            ) from None
        if not 0.0 <= percent <= 100.0:
            raise CensusFormatError(
                f"census table row {reader.line_num}: percent {percent} outside [0, 100]"
            )
        shares[occupation] = percent / 100.0
    return shares


def load_census_mapping(
    source: str | Path | Iterable[str],
) -> list[tuple[str, str, MatchMode]]:
    """Read an occupation-to-role-query mapping CSV.

    Layout: header `occupation,query,mode`, one row per occupation, mode
    one of "substring" or "exact". Queries are lower-cased on load.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _read_mapping(handle)
    return _read_mapping(source)


def _read_mapping(lines: Iterable[str]) -> list[tuple[str, str, MatchMode]]:
    reader = csv.reader(lines)
    _expect_header(reader, MAPPING_COLUMNS, "census mapping")
    rows: list[tuple[str, str, MatchMode]] = []
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise CensusFormatError(
                f"census mapping row {reader.line_num}: expected 3 fields, got {len(row)}"
            )
        occupation, query, mode_name = (field.strip() for field in row)
        if not occupation:
            raise CensusFormatError(f"census mapping row {reader.line_num}: empty occupation")
        if not query:
            raise CensusFormatError(f"census mapping row {reader.line_num}: empty query")
        mode = next((m for m in QUERY_MODES if m.value == mode_name), None)
        if mode is None:
            valid = ", ".join(m.value for m in QUERY_MODES)
            raise CensusFormatError(
                f"census mapping row {reader.line_num}: unknown match mode "
                f"{mode_name!r} (expected {valid})"
            )
        rows.append((occupation, query.lower(), mode))
    return rows


def _expect_header(reader, columns: tuple[str, ...], what: str) -> None:
    try:
        header = next(reader)
    except StopIteration:
        raise CensusFormatError(f"{what}: empty file") from None
    if [field.strip() for field in header] != list(columns):
        raise CensusFormatError(
            f"{what}: expected header {','.join(columns)!r}, got {','.join(header)!r}"
        )


def join_census(
    shares: dict[str, float], mapping: Iterable[tuple[str, str, MatchMode]]
) -> list[CensusOccupation]:
    """Join mapping rows to census shares, preserving mapping order.

    The occupation match is case-insensitive. A mapping row whose
    occupation has no census entry raises CensusFormatError.
    """
    by_name = {name.lower(): share for name, share in shares.items()}
    joined = []
    for occupation, query, mode in mapping:
        share = by_name.get(occupation.lower())
        if share is None:
            raise CensusFormatError(
                f"census mapping names {occupation!r} but the census table has no such row"
            )
        joined.append(CensusOccupation(occupation, share, query, mode))
    return joined


def compare(
    store: AggregateStore, occupations: list[CensusOccupation]
) -> list[ComparisonRow]:
    """One comparison row per occupation, in input order.

    The on-screen share pools every role matched by the occupation's
    query over all years; delta is on-screen minus census. When no role
    matches, the on-screen share and delta are None rather than a made-up
    number.
    """
    if not occupations:
        raise ValueError("no occupations to compare")
    totals = role_totals(store)
    rows: list[ComparisonRow] = []
    for occupation in occupations:
        count_f = count_m = 0
        for role, stats in totals.items():
            if matches(role, occupation.query, occupation.query_mode):
                count_f += stats.count_f
                count_m += stats.count_m
        total = count_f + count_m
        if total:
            onscreen = count_f / total
            delta = onscreen - occupation.female_share
        else:
            onscreen = delta = None
        rows.append(
            ComparisonRow(occupation.occupation, onscreen, occupation.female_share, delta)
        )
    return rows
