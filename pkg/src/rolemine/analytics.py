"""Trend analytics over an aggregate store.

Every function here is a pure read: period top-k tables, newly-popular
roles, yearly gender totals, per-gender tables, p(F) binning with seeded
sampling, keyword-based profession grouping, and substring time series.
Ranking ties break deterministically on count descending, then role text
ascending, so repeated runs emit identical tables.
"""

from __future__ import annotations

import csv
import enum
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import FormatError
from .records import Gender
from .store import AggregateStore

DEFAULT_MIN_COUNT = 1000
DEFAULT_SAMPLES_PER_BIN = 10
DEFAULT_PREV_WINDOW = 50


class ProfessionConfigError(FormatError):
    """A profession-group config file does not match its documented layout."""


@dataclass(frozen=True, slots=True)
class PeriodSpec:
    """Half-open year interval [start, end)."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ValueError(f"empty period [{self.start}, {self.end})")

    def __contains__(self, year: int) -> bool:
        return self.start <= year < self.end

    def previous(self) -> PeriodSpec:
        """The immediately preceding adjacent window of equal length."""
        length = self.end - self.start
        return PeriodSpec(self.start - length, self.start)

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


def default_periods(
    first: int = 1900, last: int = 2020, length: int = 20
) -> list[PeriodSpec]:
    """The standard 20-year windows: [1900,1920), ..., [2000,2020)."""
    return [PeriodSpec(s, s + length) for s in range(first, last, length)]


class RankedRole(NamedTuple):
    role: str
    count: int
    rank: int


class YearGenderRow(NamedTuple):
    year: int
    count_f: int
    count_m: int
    p_f: float


class GroupStats(NamedTuple):
    count_f: int
    count_m: int
    p_f: float | None


class GenderBin(enum.Enum):
    """Five p(F) strata, in ascending p(F) order."""

    STRONGLY_MALE = "strongly-male"
    MODERATELY_MALE = "moderately-male"
    NEUTRAL = "neutral"
    MODERATELY_FEMALE = "moderately-female"
    STRONGLY_FEMALE = "strongly-female"


BIN_ORDER = tuple(GenderBin)


class BinnedRole(NamedTuple):
    role: str
    p_f: float
    bin: GenderBin


class MatchMode(enum.Enum):
    """How a keyword or query matches a role string."""

    SUBSTRING = "substring"
    EXACT = "exact"
    # Substring, except when the keyword is a proper suffix of the role;
    # filters out surname hits such as "mr. bishop" for keyword "bishop".
    SUBSTRING_NOT_SUFFIX = "substring-not-suffix"


class Keyword(NamedTuple):
    text: str
    mode: MatchMode


@dataclass(frozen=True, slots=True)
class ProfessionGroup:
    """A named set of role keywords pooled into one statistic."""

    name: str
    keywords: tuple[Keyword, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("profession group needs a name")
        if not self.keywords:
            raise ValueError(f"profession group {self.name!r} needs >= 1 keyword")


def matches(role: str, keyword: str, mode: MatchMode) -> bool:
    """Whether a (lower-cased) role satisfies a keyword under a match mode."""
    role = role.lower()
    keyword = keyword.lower()
    if mode is MatchMode.EXACT:
        return role == keyword
    if keyword not in role:
        return False
    if mode is MatchMode.SUBSTRING_NOT_SUFFIX:
        return role == keyword or not role.endswith(keyword)
    return True


def _period_counts(store: AggregateStore, period: PeriodSpec) -> dict[str, int]:
    totals: dict[str, int] = {}
    for (role, year), counts in store.items():
        if year in period:
            totals[role] = totals.get(role, 0) + counts.total
    return totals


def role_totals(store: AggregateStore) -> dict[str, GroupStats]:
    """Per-role (count_f, count_m, p_f) summed over all years."""
    sums: dict[str, list[int]] = {}
    for (role, _year), counts in store.items():
        pair = sums.setdefault(role, [0, 0])
        pair[0] += counts.female
        pair[1] += counts.male
    return {
        role: GroupStats(f, m, f / (f + m) if f + m else None)
        for role, (f, m) in sums.items()
    }


def _rank(totals: dict[str, int], k: int) -> list[RankedRole]:
    if k < 1:
        raise ValueError("k must be >= 1")
    ordered = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return [RankedRole(role, count, i) for i, (role, count) in enumerate(ordered[:k], 1)]


def top_roles(store: AggregateStore, period: PeriodSpec, k: int) -> list[RankedRole]:
    """The k most frequent roles within a period, genders combined."""
    return _rank(_period_counts(store, period), k)


def top_roles_by_gender(store: AggregateStore, gender: Gender, k: int) -> list[RankedRole]:
    """The k most frequent roles for one gender, over all years."""
    totals: dict[str, int] = {}
    for (role, _year), counts in store.items():
        count = counts.female if gender is Gender.F else counts.male
        if count:
            totals[role] = totals.get(role, 0) + count
    return _rank(totals, k)


def emerging_roles(
    store: AggregateStore,
    period: PeriodSpec,
    k: int = 10,
    prev_window: int = DEFAULT_PREV_WINDOW,
) -> list[RankedRole]:
    """Newly popular roles: period top-k, excluding anything already in the
    previous adjacent period's top prev_window. For the first period with
    data this equals top_roles."""
    established = {r.role for r in top_roles(store, period.previous(), prev_window)}
    totals = {
        role: count
        for role, count in _period_counts(store, period).items()
        if role not in established
    }
    return _rank(totals, k)


def gender_totals_by_year(store: AggregateStore) -> list[YearGenderRow]:
    """Yearly female/male totals and p(F), one row per year present."""
    sums: dict[int, list[int]] = {}
    for (_role, year), counts in store.items():
        pair = sums.setdefault(year, [0, 0])
        pair[0] += counts.female
        pair[1] += counts.male
    return [
        YearGenderRow(year, f, m, f / (f + m))
        for year, (f, m) in sorted(sums.items())
    ]


def role_timeseries(store: AggregateStore, query: str) -> list[YearGenderRow]:
    """Yearly totals over every role containing the query as a substring.

    Both sides are lower-cased; years with no matching record are omitted.
    """
    if not query:
        raise ValueError("query must be non-empty")
    query = query.lower()
    sums: dict[int, list[int]] = {}
    for (role, year), counts in store.items():
        if query in role.lower():
            pair = sums.setdefault(year, [0, 0])
            pair[0] += counts.female
            pair[1] += counts.male
    return [
        YearGenderRow(year, f, m, f / (f + m))
        for year, (f, m) in sorted(sums.items())
    ]


def bin_roles(
    store: AggregateStore,
    min_count: int = DEFAULT_MIN_COUNT,
    exclude_names: Iterable[str] = (),
    seed: int = 0,
    samples_per_bin: int = DEFAULT_SAMPLES_PER_BIN,
) -> list[BinnedRole]:
    """Partition common roles into five p(F) bins and sample each.

    Eligible roles have an all-years count strictly above min_count and are
    not in exclude_names (a lower-cased name list, typically census first
    names). Roles are ordered by p(F) then role text, split into five
    contiguous bins whose sizes differ by at most one (remainder to the
    lowest bins), and samples_per_bin entries are drawn from each bin
    without replacement by a generator seeded with `seed`. Raises
    ValueError when fewer than five roles are eligible.
    """
    excluded = {name.lower() for name in exclude_names}
    eligible = [
        (stats.p_f, role)
        for role, stats in role_totals(store).items()
        if stats.count_f + stats.count_m > min_count and role.lower() not in excluded
    ]
    if len(eligible) < len(BIN_ORDER):
        raise ValueError(
            f"only {len(eligible)} roles with count > {min_count} after exclusions; "
            f"binning needs at least {len(BIN_ORDER)}"
        )
    eligible.sort()
    base, remainder = divmod(len(eligible), len(BIN_ORDER))
    rng = random.Random(seed)
    sampled: list[BinnedRole] = []
    start = 0
    for index, bin_label in enumerate(BIN_ORDER):
        size = base + (1 if index < remainder else 0)
        members = eligible[start : start + size]
        start += size
        for p_f, role in rng.sample(members, min(samples_per_bin, len(members))):
            sampled.append(BinnedRole(role, p_f, bin_label))
    return sampled


def profession_stats(store: AggregateStore, group: ProfessionGroup) -> GroupStats:
    """Pooled gender counts over every role matched by any group keyword.

    A role matched by several keywords still counts once. Zero matches
    yield (0, 0, None).
    """
    count_f = count_m = 0
    for role, stats in role_totals(store).items():
        if any(matches(role, kw.text, kw.mode) for kw in group.keywords):
            count_f += stats.count_f
            count_m += stats.count_m
    total = count_f + count_m
    return GroupStats(count_f, count_m, count_f / total if total else None)


def load_profession_groups(source: str | Path | Iterable[str]) -> list[ProfessionGroup]:
    """Read profession groups from a config file.

    One CSV record per group: the group name, then one or more
    `keyword:mode` fields (mode defaults to substring when omitted).
    Blank lines and lines starting with "#" are skipped.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _read_profession_groups(handle)
    return _read_profession_groups(source)


def _read_profession_groups(lines: Iterable[str]) -> list[ProfessionGroup]:
    groups: list[ProfessionGroup] = []
    seen: set[str] = set()
    for number, line in enumerate(iter(lines), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        for row in csv.reader([line]):
            if len(row) < 2:
                raise ProfessionConfigError(
                    f"line {number}: expected a group name and >= 1 keyword"
                )
            name = row[0].strip()
            if not name:
                raise ProfessionConfigError(f"line {number}: empty group name")
            if name in seen:
                raise ProfessionConfigError(f"line {number}: duplicate group {name!r}")
            seen.add(name)
            keywords = []
            for raw in row[1:]:
                keywords.append(_parse_keyword(raw, number))
            groups.append(ProfessionGroup(name, tuple(keywords)))
    return groups


def _parse_keyword(raw: str, line: int) -> Keyword:
    text, sep, mode_name = raw.strip().rpartition(":")
    if not sep:
        text, mode_name = mode_name, MatchMode.SUBSTRING.value
    if not text:
        raise ProfessionConfigError(f"line {line}: empty keyword in {raw!r}")
    try:
        mode = MatchMode(mode_name)
    except ValueError:
        valid = ", ".join(m.value for m in MatchMode)
        raise ProfessionConfigError(
            f"line {line}: unknown match mode {mode_name!r} (expected {valid})"
        ) from None
    return Keyword(text.lower(), mode)


def default_profession_groups() -> list[ProfessionGroup]:
    """The profession groups shipped with the package."""
    from importlib.resources import files

    text = files("rolemine.data").joinpath("professions.csv").read_text("utf-8")
    return _read_profession_groups(text.splitlines())


def load_exclude_names(source: str | Path | Iterable[str]) -> frozenset[str]:
    """Read a name-exclusion list: one name per line, lower-cased on load;
    blank lines and "#" comments are skipped."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return _read_names(handle)
    return _read_names(source)


def _read_names(lines: Iterable[str]) -> frozenset[str]:
    names = set()
    for line in lines:
        name = line.strip()
        if name and not name.startswith("#"):
            names.add(name.lower())
    return frozenset(names)
