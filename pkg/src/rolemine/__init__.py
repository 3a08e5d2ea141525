"""Mine film and TV cast-list dumps for role and gender statistics.

The pipeline has three stages, each usable on its own:

1. listfile: stream appearance records out of actors/actresses dump files.
2. normalize + store: clean role strings and aggregate (role, year)
   gender counts into a snapshot that persists as CSV.
3. analytics + census: rank, trend, bin, group, and compare the counts.

The `rolemine` command wires the stages together for batch use.
"""

from .analytics import (
    BinnedRole,
    GenderBin,
    GroupStats,
    Keyword,
    MatchMode,
    PeriodSpec,
    ProfessionConfigError,
    ProfessionGroup,
    RankedRole,
    YearGenderRow,
    bin_roles,
    default_periods,
    default_profession_groups,
    emerging_roles,
    gender_totals_by_year,
    load_exclude_names,
    load_profession_groups,
    profession_stats,
    role_timeseries,
    role_totals,
    top_roles,
    top_roles_by_gender,
)
from .census import (
    CensusFormatError,
    CensusOccupation,
    ComparisonRow,
    compare,
    join_census,
    load_census_mapping,
    load_census_table,
)
from .errors import FormatError
from .listfile import (
    ListFormatError,
    ParseReport,
    RawAppearance,
    TitleEntry,
    episode_year,
    parse_list_file,
    parse_list_stream,
    parse_title_entry,
)
from .normalize import clean_role, is_self_role
from .pipeline import build_shard, build_store
from .records import MAX_YEAR, MIN_YEAR, Gender, RoleRecord
from .store import (
    AggregateStore,
    GenderCounts,
    SnapshotFormatError,
    ingest,
    load_snapshot,
    merge,
    save_snapshot,
    snapshot_bytes,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateStore",
    "BinnedRole",
    "CensusFormatError",
    "CensusOccupation",
    "ComparisonRow",
    "FormatError",
    "Gender",
    "GenderBin",
    "GenderCounts",
    "GroupStats",
    "Keyword",
    "ListFormatError",
    "MatchMode",
    "MAX_YEAR",
    "MIN_YEAR",
    "ParseReport",
    "PeriodSpec",
    "ProfessionConfigError",
    "ProfessionGroup",
    "RankedRole",
    "RawAppearance",
    "RoleRecord",
    "SnapshotFormatError",
    "TitleEntry",
    "YearGenderRow",
    "bin_roles",
    "build_shard",
    "build_store",
    "clean_role",
    "compare",
    "default_periods",
    "default_profession_groups",
    "emerging_roles",
    "episode_year",
    "gender_totals_by_year",
    "ingest",
    "is_self_role",
    "join_census",
    "load_census_mapping",
    "load_census_table",
    "load_exclude_names",
    "load_profession_groups",
    "load_snapshot",
    "merge",
    "parse_list_file",
    "parse_list_stream",
    "parse_title_entry",
    "profession_stats",
    "role_timeseries",
    "role_totals",
    "save_snapshot",
    "snapshot_bytes",
    "top_roles",
    "top_roles_by_gender",
    "__version__",
]
