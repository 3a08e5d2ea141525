"""Aggregation of cleaned role records into (role, year) gender counts.

The store is the hand-off point between the expensive dump parse and the
analytics: it persists to a CSV snapshot (`role,year,count_f,count_m`,
UTF-8, rows sorted by role then year) so analyses never re-read the dumps.
Counts are exact integers; proportions are derived on demand.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import FormatError
from .records import MAX_YEAR, MIN_YEAR, Gender, RoleRecord

SNAPSHOT_COLUMNS = ("role", "year", "count_f", "count_m")


class SnapshotFormatError(FormatError):
    """A snapshot file does not match the documented CSV layout."""


@dataclass(slots=True)
class GenderCounts:
    """Non-negative appearance counts for one (role, year) key."""

    female: int = 0
    male: int = 0

    @property
    def total(self) -> int:
        return self.female + self.male

    @property
    def p_female(self) -> float:
        """Proportion of appearances from the actresses file."""
        return self.female / self.total


@dataclass(slots=True)
class AggregateStore:
    """Map from (role, year) to GenderCounts, plus the grand total."""

    entries: dict[tuple[str, int], GenderCounts] = field(default_factory=dict)
    total_records: int = 0

    def add(self, role: str, year: int, gender: Gender) -> None:
        """Count one appearance."""
        if not role:
            raise ValueError("role must be non-empty")
        if not MIN_YEAR <= year <= MAX_YEAR:
            raise ValueError(f"year {year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        counts = self.entries.get((role, year))
        if counts is None:
            counts = GenderCounts()
            self.entries[(role, year)] = counts
        if gender is Gender.F:
            counts.female += 1
        else:
            counts.male += 1
        self.total_records += 1

    def add_record(self, record: RoleRecord) -> None:
        self.add(record.role, record.year, record.gender)

    def counts(self, role: str, year: int) -> GenderCounts | None:
        return self.entries.get((role, year))

    def gender_distribution(self, role: str, year: int) -> float | None:
        """p(F) for the key, or None when the key was never seen."""
        counts = self.entries.get((role, year))
        return None if counts is None else counts.p_female

    def items(self) -> Iterator[tuple[tuple[str, int], GenderCounts]]:
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)


def ingest(store: AggregateStore, records: Iterable[RoleRecord]) -> AggregateStore:
    """Count each record into the store; returns the same store."""
    for record in records:
        store.add_record(record)
    return store


def merge(a: AggregateStore, b: AggregateStore) -> AggregateStore:
    """Pointwise sum of two stores, as a new store."""
    merged = AggregateStore()
    for source in (a, b):
        for (role, year), counts in source.items():
            existing = merged.entries.get((role, year))
            if existing is None:
                merged.entries[(role, year)] = GenderCounts(
                    counts.female, counts.male
                )
            else:
                existing.female += counts.female
                existing.male += counts.male
    merged.total_records = a.total_records + b.total_records
    return merged


def save_snapshot(store: AggregateStore, sink: str | Path | IO[str]) -> None:
    """Write the snapshot CSV; rows sorted by (role, year) for stable bytes."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as handle:
            _write_snapshot(store, handle)
    else:
        _write_snapshot(store, sink)


def _write_snapshot(store: AggregateStore, handle: IO[str]) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(SNAPSHOT_COLUMNS)
    for (role, year), counts in sorted(store.entries.items(), key=lambda kv: kv[0]):
        writer.writerow((role, year, counts.female, counts.male))


def load_snapshot(source: str | Path | IO[str]) -> AggregateStore:
    """Read a snapshot CSV back into a store.

    Raises SnapshotFormatError, citing the offending line number, on any
    layout violation: wrong header, wrong field count, non-integer or
    out-of-range values, duplicate keys, or rows summing to zero.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _read_snapshot(handle)
    return _read_snapshot(source)


def _read_snapshot(handle: IO[str]) -> AggregateStore:
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise SnapshotFormatError("line 1: empty snapshot, expected header") from None
    if tuple(header) != SNAPSHOT_COLUMNS:
        raise SnapshotFormatError(
            f"line 1: bad header {header!r}, expected {','.join(SNAPSHOT_COLUMNS)}"
        )
    store = AggregateStore()
    for row in reader:
        line = reader.line_num
        if len(row) != 4:
            raise SnapshotFormatError(f"line {line}: expected 4 fields, got {len(row)}")
        role = row[0]
        if not role:
            raise SnapshotFormatError(f"line {line}: empty role")
        try:
            year, female, male = int(row[1]), int(row[2]), int(row[3])
        except ValueError:
            raise SnapshotFormatError(f"line {line}: non-integer field in {row!r}") from None
        if not MIN_YEAR <= year <= MAX_YEAR:
            raise SnapshotFormatError(f"line {line}: year {year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        if female < 0 or male < 0:
            raise SnapshotFormatError(f"line {line}: negative count in {row!r}")
        if female + male == 0:
            raise SnapshotFormatError(f"line {line}: zero-count key {role!r}/{year}")
        if (role, year) in store.entries:
            raise SnapshotFormatError(f"line {line}: duplicate key {role!r}/{year}")
        store.entries[(role, year)] = GenderCounts(female, male)
        store.total_records += female + male
    return store


def snapshot_bytes(store: AggregateStore) -> bytes:
    """The exact bytes save_snapshot would write."""
    buffer = io.StringIO()
    _write_snapshot(store, buffer)
    return buffer.getvalue().encode("utf-8")
