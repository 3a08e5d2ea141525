"""End-to-end build: two cast-list dumps in, one aggregate store out.

The male and female dumps are independent, so they are parsed on two
worker threads into private shards and merged at the end. Merge order is
fixed (actors shard first) to keep total_records and snapshots identical
across runs regardless of thread timing.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .listfile import ParseReport, parse_list_file
from .normalize import clean_role
from .records import Gender, RoleRecord
from .store import AggregateStore, merge


def build_shard(path: str | Path, gender: Gender) -> tuple[AggregateStore, ParseReport]:
    """Parse one dump file into a fresh store."""
    store = AggregateStore()
    records, report = parse_list_file(path, gender)
    for appearance in records:
        if appearance.raw_role is None:
            continue
        for role in clean_role(appearance.raw_role):
            store.add_record(RoleRecord(role, appearance.year, appearance.gender))
    return store, report


def build_store(
    actors_path: str | Path, actresses_path: str | Path
) -> tuple[AggregateStore, dict[str, ParseReport]]:
    """Parse both dumps concurrently and merge the shards.

    Returns the merged store plus the per-file parse reports keyed as
    "actors" and "actresses".
    """
    with ThreadPoolExecutor(max_workers=2) as pool:
        male = pool.submit(build_shard, actors_path, Gender.M)
        female = pool.submit(build_shard, actresses_path, Gender.F)
        actors_store, actors_report = male.result()
        actresses_store, actresses_report = female.result()
    merged = merge(actors_store, actresses_store)
    return merged, {"actors": actors_report, "actresses": actresses_report}
