import random

import pytest

import oracles
from rolemine import (
    AggregateStore,
    CensusFormatError,
    CensusOccupation,
    Gender,
    MatchMode,
    compare,
    join_census,
    load_census_mapping,
    load_census_table,
)


def store_of(counts):
    store = AggregateStore()
    for (role, year), (f, m) in counts.items():
        for _ in range(f):
            store.add(role, year, Gender.F)
        for _ in range(m):
            store.add(role, year, Gender.M)
    return store


class TestLoadCensusTable:
    def test_percent_becomes_share(self):
        shares = load_census_table(["occupation,percent_female", "Cook,41.5", "Janitor,0"])
        assert shares == {"Cook": 0.415, "Janitor": 0.0}

    def test_reads_fixture_file(self, data_dir):
        shares = load_census_table(data_dir / "census.csv")
        assert shares["Registered nurse"] == pytest.approx(0.88)
        assert len(shares) == 4

    @pytest.mark.parametrize(
        "lines,fragment",
        [
            ([], "empty file"),
            (["job,percent"], "expected header"),
            (["occupation,percent_female", "Cook,41.5,extra"], "row 2: expected 2 fields"),
            (["occupation,percent_female", "Cook,many"], "not a number"),
            (["occupation,percent_female", "Cook,140"], "outside"),
            (["occupation,percent_female", "Cook,-3"], "outside"),
            (["occupation,percent_female", ",41.5"], "empty occupation"),
            (["occupation,percent_female", "Cook,41.5", "cook,2"], "row 3: duplicate"),
        ],
    )
    def test_layout_errors(self, lines, fragment):
        with pytest.raises(CensusFormatError, match=fragment):
            load_census_table(lines)


class TestLoadCensusMapping:
    def test_queries_lowercased(self):
        rows = load_census_mapping(
            ["occupation,query,mode", "Cook,COOK,exact", "Janitor,Janitor,substring"]
        )
        assert rows == [
            ("Cook", "cook", MatchMode.EXACT),
            ("Janitor", "janitor", MatchMode.SUBSTRING),
        ]

    @pytest.mark.parametrize(
        "lines,fragment",
        [
            (["occupation,query"], "expected header"),
            (["occupation,query,mode", "Cook,cook"], "expected 3 fields"),
            (["occupation,query,mode", ",cook,exact"], "empty occupation"),
            (["occupation,query,mode", "Cook,,exact"], "empty query"),
            (["occupation,query,mode", "Cook,cook,fuzzy"], "unknown match mode"),
            # the suffix-filtering mode is for profession groups, not census queries
            (["occupation,query,mode", "Cook,cook,substring-not-suffix"], "unknown match mode"),
        ],
    )
    def test_layout_errors(self, lines, fragment):
        with pytest.raises(CensusFormatError, match=fragment):
            load_census_mapping(lines)


class TestJoinCensus:
    def test_join_is_case_insensitive_and_keeps_mapping_order(self):
        shares = {"Registered Nurse": 0.88, "Cook": 0.415}
        mapping = [
            ("cook", "cook", MatchMode.EXACT),
            ("registered nurse", "nurse", MatchMode.SUBSTRING),
        ]
        joined = join_census(shares, mapping)
        assert joined == [
            CensusOccupation("cook", 0.415, "cook", MatchMode.EXACT),
            CensusOccupation("registered nurse", 0.88, "nurse", MatchMode.SUBSTRING),
        ]

    def test_missing_census_row_is_an_error(self):
        with pytest.raises(CensusFormatError, match="'Surgeon'"):
            join_census({"Cook": 0.4}, [("Surgeon", "surgeon", MatchMode.SUBSTRING)])


class TestCompare:
    def test_balanced_role_matches_balanced_census(self):
        store = store_of({("cook", 2000): (1, 1)})
        rows = compare(store, [CensusOccupation("Cook", 0.5, "cook", MatchMode.EXACT)])
        assert rows == [("Cook", 0.5, 0.5, 0.0)]

    def test_zero_matches_leave_fields_unset(self):
        store = store_of({("cook", 2000): (1, 1)})
        rows = compare(store, [CensusOccupation("Surgeon", 0.38, "surgeon", MatchMode.EXACT)])
        assert rows == [("Surgeon", None, 0.38, None)]

    def test_delta_sign_flips_with_gender_swap(self):
        occ = [CensusOccupation("Cook", 0.5, "cook", MatchMode.EXACT)]
        skew_f = compare(store_of({("cook", 2000): (3, 1)}), occ)[0]
        skew_m = compare(store_of({("cook", 2000): (1, 3)}), occ)[0]
        assert skew_f.delta == pytest.approx(-skew_m.delta)
        assert skew_f.delta > 0 > skew_m.delta

    def test_empty_occupation_list_rejected(self):
        with pytest.raises(ValueError, match="no occupations"):
            compare(AggregateStore(), [])

    def test_delta_bounded(self):
        rng = random.Random(33)
        for _ in range(50):
            store = store_of({
                ("cook", rng.randint(1900, 2020)): (rng.randint(0, 5), rng.randint(1, 5))
            })
            share = rng.random()
            row = compare(store, [CensusOccupation("Cook", share, "cook", MatchMode.EXACT)])[0]
            assert -1.0 <= row.delta <= 1.0
            assert row.delta == pytest.approx(row.onscreen_p_f - share)

    def test_substring_query_pools_roles(self):
        store = store_of({
            ("nurse", 1990): (4, 0),
            ("head nurse", 1991): (2, 1),
            ("doctor", 1990): (0, 3),
        })
        row = compare(store, [CensusOccupation("Nurse", 0.9, "nurse", MatchMode.SUBSTRING)])[0]
        assert row.onscreen_p_f == pytest.approx(6 / 7)

    def test_fixture_matches_oracle(self, fixture_store, data_dir):
        store = fixture_store
        occupations = join_census(
            load_census_table(data_dir / "census.csv"),
            load_census_mapping(data_dir / "mapping.csv"),
        )
        entries = {key: (c.female, c.male) for key, c in store.items()}
        oracle_rows = oracles.compare_census(
            entries,
            [(o.occupation, o.female_share, o.query, o.query_mode.value) for o in occupations],
        )
        got = [tuple(row) for row in compare(store, occupations)]
        assert got == oracle_rows
        # the fixture corpus has no role containing "ceo"
        assert got[3][1] is None
