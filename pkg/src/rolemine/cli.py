"""Batch command-line frontend.

`rolemine build` turns a pair of cast-list dumps into a snapshot CSV;
the other subcommands load that snapshot and emit one analysis table
each. Identical inputs and flags produce byte-identical output: sort
orders are fixed, proportions print with four decimal places, and files
are written atomically (temp file, then rename) so a failed run never
leaves a partial table behind.

Exit codes: 0 success, 1 usage error, 2 input format error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .analytics import (
    DEFAULT_MIN_COUNT,
    DEFAULT_PREV_WINDOW,
    DEFAULT_SAMPLES_PER_BIN,
    PeriodSpec,
    bin_roles,
    default_profession_groups,
    emerging_roles,
    gender_totals_by_year,
    load_exclude_names,
    load_profession_groups,
    profession_stats,
    role_timeseries,
    top_roles,
    top_roles_by_gender,
)
from .census import compare, join_census, load_census_mapping, load_census_table
from .errors import FormatError
from .pipeline import build_store
from .records import MAX_YEAR, Gender
from .store import load_snapshot, snapshot_bytes

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_IO = 3

DEFAULT_YEAR_CAP = 2014

Row = tuple


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this interface reserves 2 for
    # input format problems, so remap to 1.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _period(text: str) -> PeriodSpec:
    start, sep, end = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"expected START:END (for example 2000:2020), got {text!r}"
        )
    try:
        period = PeriodSpec(int(start), int(end))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return period


def _year_cap(text: str) -> int:
    cap = int(text)
    if cap > MAX_YEAR:
        raise argparse.ArgumentTypeError(f"year cap {cap} is beyond {MAX_YEAR}")
    return cap


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _render_delimited(columns: Sequence[str], rows: Sequence[Row], delimiter: str) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=delimiter, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(value) for value in row])
    return buffer.getvalue()


def _render_json(columns: Sequence[str], rows: Sequence[Row]) -> str:
    objects = []
    for row in rows:
        record = {}
        for column, value in zip(columns, row):
            if isinstance(value, float):
                value = round(value, 4)
            record[column] = value
        objects.append(record)
    return json.dumps(objects, ensure_ascii=False, indent=2) + "\n"


def _render(columns: Sequence[str], rows: Sequence[Row], fmt: str) -> str:
    if fmt == "json":
        return _render_json(columns, rows)
    return _render_delimited(columns, rows, "\t" if fmt == "tsv" else ",")


def _write_output(text: str, out: str | None, encoding: str = "utf-8") -> None:
    data = text.encode(encoding)
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    _write_atomic(data, out)


def _write_atomic(data: bytes, out: str | Path) -> None:
    target = Path(out)
    handle = tempfile.NamedTemporaryFile(
        mode="wb", dir=target.parent, prefix=f".{target.name}.", delete=False
    )
    try:
        with handle:
            handle.write(data)
        os.replace(handle.name, target)
    except BaseException:
        os.unlink(handle.name)
        raise


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("csv", "tsv", "json"), default="csv",
        help="output table format (default: csv)",
    )
    parser.add_argument(
        "--out", metavar="PATH", default=None,
        help="write the table to PATH instead of standard output",
    )


def _add_snapshot_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--snapshot", metavar="PATH", required=True,
        help="aggregate snapshot CSV produced by the build subcommand",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rolemine",
        description="Mine cast-list dumps for role and gender statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "build", help="parse two cast-list dumps into a snapshot CSV",
        description="Parse an actors dump and an actresses dump (plain or "
        "gzip) into the aggregate snapshot used by every other subcommand. "
        "Parse statistics go to standard error.",
    )
    p.add_argument("actors", help="cast-list dump parsed with gender M")
    p.add_argument("actresses", help="cast-list dump parsed with gender F")
    p.add_argument(
        "--snapshot", metavar="PATH", required=True,
        help="where to write the snapshot CSV",
    )

    p = sub.add_parser(
        "top", help="most frequent roles in a period or for one gender",
        description="Rank roles by record count, either inside a year period "
        "(genders combined) or for one gender over all years. Columns: "
        "rank,role,count.",
    )
    _add_snapshot_flag(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument(
        "--period", type=_period, metavar="START:END",
        help="half-open year range, e.g. 2000:2020",
    )
    which.add_argument(
        "--gender", choices=("F", "M"),
        help="rank one gender's counts over all years instead of a period",
    )
    p.add_argument("--k", type=int, default=10, help="table size (default: 10)")
    _add_output_flags(p)

    p = sub.add_parser(
        "emerging", help="newly popular roles in a period",
        description="Roles ranking high in a period that were absent from "
        "the previous adjacent period's top list. Columns: rank,role,count.",
    )
    _add_snapshot_flag(p)
    p.add_argument(
        "--period", type=_period, metavar="START:END", required=True,
        help="half-open year range, e.g. 2000:2020",
    )
    p.add_argument("--k", type=int, default=10, help="table size (default: 10)")
    p.add_argument(
        "--prev-window", type=int, default=DEFAULT_PREV_WINDOW, metavar="N",
        help="size of the previous period's exclusion list (default: %(default)s)",
    )
    _add_output_flags(p)

    p = sub.add_parser(
        "gender", help="yearly female/male totals and female share",
        description="One row per year with female and male record counts "
        "and the female share. Columns: year,count_f,count_m,p_f.",
    )
    _add_snapshot_flag(p)
    p.add_argument(
        "--year-cap", type=_year_cap, default=DEFAULT_YEAR_CAP, metavar="YEAR",
        help="drop years after YEAR (default: %(default)s)",
    )
    _add_output_flags(p)

    p = sub.add_parser(
        "bins", help="sample common roles across five female-share strata",
        description="Order roles with enough records by female share, split "
        "them into five equal bins, and sample each bin deterministically. "
        "Columns: bin,role,p_f.",
    )
    _add_snapshot_flag(p)
    p.add_argument(
        "--min-count", type=int, default=DEFAULT_MIN_COUNT, metavar="N",
        help="keep roles with more than N records over all years (default: %(default)s)",
    )
    p.add_argument(
        "--exclude-names", metavar="PATH", default=None,
        help="file of role names to drop, one per line (for common person names)",
    )
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default: 0)")
    p.add_argument(
        "--samples-per-bin", type=int, default=DEFAULT_SAMPLES_PER_BIN, metavar="N",
        help="sample size per bin (default: %(default)s)",
    )
    _add_output_flags(p)

    p = sub.add_parser(
        "professions", help="pooled gender counts per profession group",
        description="Pool role counts by profession keyword groups and "
        "report each group's female share. Columns: "
        "profession,count_f,count_m,p_f.",
    )
    _add_snapshot_flag(p)
    p.add_argument(
        "--config", metavar="PATH", default=None,
        help="profession groups file (default: the built-in groups)",
    )
    _add_output_flags(p)

    p = sub.add_parser(
        "timeseries", help="yearly counts for roles matching a query",
        description="Yearly female/male totals over every role containing "
        "the query as a substring. Columns: year,count_f,count_m,p_f.",
    )
    _add_snapshot_flag(p)
    p.add_argument("--query", required=True, help="role substring to match")
    p.add_argument(
        "--year-cap", type=_year_cap, default=DEFAULT_YEAR_CAP, metavar="YEAR",
        help="drop years after YEAR (default: %(default)s)",
    )
    _add_output_flags(p)

    p = sub.add_parser(
        "census", help="compare on-screen female shares against census data",
        description="Join a census occupation table with an occupation-to-"
        "role-query mapping and compare each occupation's on-screen female "
        "share against its census share. Columns: "
        "occupation,onscreen_p_f,census_p_f,delta.",
    )
    _add_snapshot_flag(p)
    p.add_argument(
        "--census", metavar="PATH", required=True,
        help="census CSV with header occupation,percent_female",
    )
    p.add_argument(
        "--mapping", metavar="PATH", required=True,
        help="mapping CSV with header occupation,query,mode",
    )
    _add_output_flags(p)

    return parser


def _cmd_build(args: argparse.Namespace) -> int:
    store, reports = build_store(args.actors, args.actresses)
    for name in ("actors", "actresses"):
        report = reports[name]
        print(
            f"{name}: {report.records_emitted} emitted, "
            f"{report.lines_skipped_malformed} malformed, "
            f"{report.records_excluded_alternative_name} alternative-name, "
            f"{report.records_excluded_no_year} no-year "
            f"({report.title_lines} title lines)",
            file=sys.stderr,
        )
    print(f"total role records: {store.total_records}", file=sys.stderr)
    _write_atomic(snapshot_bytes(store), args.snapshot)
    return EXIT_OK


def _cmd_top(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    if args.gender is not None:
        ranked = top_roles_by_gender(store, Gender(args.gender), args.k)
    else:
        ranked = top_roles(store, args.period, args.k)
    rows = [(r.rank, r.role, r.count) for r in ranked]
    _write_output(_render(("rank", "role", "count"), rows, args.format), args.out)
    return EXIT_OK


def _cmd_emerging(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    ranked = emerging_roles(store, args.period, args.k, args.prev_window)
    rows = [(r.rank, r.role, r.count) for r in ranked]
    _write_output(_render(("rank", "role", "count"), rows, args.format), args.out)
    return EXIT_OK


def _cmd_gender(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    rows = [tuple(r) for r in gender_totals_by_year(store) if r.year <= args.year_cap]
    _write_output(
        _render(("year", "count_f", "count_m", "p_f"), rows, args.format), args.out
    )
    return EXIT_OK


def _cmd_bins(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    exclude = load_exclude_names(args.exclude_names) if args.exclude_names else ()
    binned = bin_roles(
        store,
        min_count=args.min_count,
        exclude_names=exclude,
        seed=args.seed,
        samples_per_bin=args.samples_per_bin,
    )
    rows = [(b.bin.value, b.role, b.p_f) for b in binned]
    _write_output(_render(("bin", "role", "p_f"), rows, args.format), args.out)
    return EXIT_OK


def _cmd_professions(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    if args.config is not None:
        groups = load_profession_groups(args.config)
    else:
        groups = default_profession_groups()
    rows = [(group.name, *profession_stats(store, group)) for group in groups]
    _write_output(
        _render(("profession", "count_f", "count_m", "p_f"), rows, args.format),
        args.out,
    )
    return EXIT_OK


def _cmd_timeseries(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    rows = [
        tuple(r) for r in role_timeseries(store, args.query) if r.year <= args.year_cap
    ]
    _write_output(
        _render(("year", "count_f", "count_m", "p_f"), rows, args.format), args.out
    )
    return EXIT_OK


def _cmd_census(args: argparse.Namespace) -> int:
    store = load_snapshot(args.snapshot)
    occupations = join_census(
        load_census_table(args.census), load_census_mapping(args.mapping)
    )
    comparison = compare(store, occupations)
    for row in comparison:
        if row.onscreen_p_f is None:
            print(
                f"note: no roles matched the query for {row.occupation!r}; "
                "its on-screen share is left blank",
                file=sys.stderr,
            )
    rows = [tuple(r) for r in comparison]
    _write_output(
        _render(("occupation", "onscreen_p_f", "census_p_f", "delta"), rows, args.format),
        args.out,
    )
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "top": _cmd_top,
    "emerging": _cmd_emerging,
    "gender": _cmd_gender,
    "bins": _cmd_bins,
    "professions": _cmd_professions,
    "timeseries": _cmd_timeseries,
    "census": _cmd_census,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"rolemine {args.command}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"rolemine {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"rolemine {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
