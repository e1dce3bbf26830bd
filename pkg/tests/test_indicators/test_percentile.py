"""Tests for the threshold rank, threshold and expected counts, is_top and N_TOPp+."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rpys.indicators import (
    build_matrix,
    expected_count,
    is_top,
    n_top,
    n_top_all,
    threshold_count,
    threshold_rank,
    year_thresholds,
)
from rpys.indicators.matrix import CitationMatrix
from rpys.models import ImportWindow, MergedCR, PercentileConfig
from tests.helpers import merged

YEARS = range(1980, 2018)


def single_year(counts: list[int], year: int = 2000) -> CitationMatrix:
    rows = [merged(f"REF {i}", {year: c} if c else {}) for i, c in enumerate(counts)]
    return build_matrix(rows, (year, year))


def zipf_corpus(rng: random.Random, refs: int) -> list[MergedCR]:
    """References whose yearly counts fall off roughly as 1 / rank."""
    rows = []
    for i in range(refs):
        ceiling = max(1, int(60 / (i + 1) ** 0.9))
        counts = {}
        for year in YEARS:
            if rng.random() < 0.6:
                counts[year] = rng.randint(1, ceiling)
        if not counts:
            counts[rng.choice(YEARS)] = 1
        rows.append(merged(f"REF {i}", counts, rpy=1900 + i % 80))
    return rows


def oracle_members(rows: list[MergedCR], year: int, p: Fraction, r: int) -> set[int]:
    """Sort every positive windowed count, read the threshold and apply both rules literally."""
    window = range(max(year - r, YEARS.start), min(year + r, YEARS.stop - 1) + 1)
    counts = [sum(row.counts_by_year.get(t, 0) for t in window) for row in rows]
    positive = sorted((c for c in counts if c > 0), reverse=True)
    if not positive:
        return set()
    n = len(positive)
    rank = int(1 + n * p)
    threshold = positive[rank - 1]
    mean = Fraction(sum(positive), n)
    return {i for i, c in enumerate(counts) if c > threshold and c > mean}


class TestThresholdRank:
    def test_ten_thousand_at_one_per_mille(self) -> None:
        assert threshold_rank(10_000, 0.001) == 11

    def test_small_population(self) -> None:
        assert threshold_rank(500, 0.001) == 1

    def test_exact_product(self) -> None:
        assert threshold_rank(1000, 0.001) == 2

    def test_accepts_fraction_and_text(self) -> None:
        assert threshold_rank(250, Fraction(1, 100)) == 3
        assert threshold_rank(250, "0.01") == 3

    def test_random_pairs(self) -> None:
        rng = random.Random(12)
        for _ in range(200):
            n = rng.randint(1, 2_000_000)
            per_ten_thousand = rng.randint(1, 9999)
            p = per_ten_thousand / 10_000
            assert threshold_rank(n, p) == 1 + (n * per_ten_thousand) // 10_000

    @pytest.mark.parametrize("n", [0, -3])
    def test_non_positive_population(self, n: int) -> None:
        with pytest.raises(ValueError):
            threshold_rank(n, 0.001)


class TestThresholdCount:
    def test_small_population_reads_the_maximum(self) -> None:
        matrix = single_year([9, 5, 5, 3])
        cfg = PercentileConfig(p=0.001, n_pct_range=0)
        assert threshold_count(matrix, 2000, cfg) == 9
        assert not any(is_top(matrix, row, 2000, cfg) for row in range(4))

    def test_eleventh_largest_of_ten_thousand(self) -> None:
        rng = random.Random(77)
        counts = [rng.randint(1, 5000) for _ in range(10_000)]
        matrix = single_year(counts)
        cfg = PercentileConfig(p=0.001, n_pct_range=0)
        assert threshold_count(matrix, 2000, cfg) == sorted(counts, reverse=True)[10]

    def test_matches_full_sort(self) -> None:
        rng = random.Random(5)
        for _ in range(1000):
            counts = [rng.randint(0, 30) for _ in range(rng.randint(1, 60))]
            if not any(counts):
                counts[0] = 1
            p = rng.choice([0.001, 0.01, 0.1, 0.25, 0.5])
            positive = sorted((c for c in counts if c > 0), reverse=True)
            expected = positive[threshold_rank(len(positive), p) - 1]
            assert threshold_count(single_year(counts), 2000, PercentileConfig(p=p, n_pct_range=0)) == expected

    @pytest.mark.parametrize("p", [0.001, 0.01, 0.1, 0.5])
    def test_all_equal_counts_have_no_top(self, p: float) -> None:
        matrix = single_year([4] * 50)
        cfg = PercentileConfig(p=p, n_pct_range=0)
        assert threshold_count(matrix, 2000, cfg) == 4
        assert n_top_all(matrix, cfg) == [0] * 50

    def test_empty_window_is_none(self) -> None:
        matrix = build_matrix([merged("A", {1990: 3})], (1990, 1995))
        cfg = PercentileConfig(n_pct_range=0)
        assert threshold_count(matrix, 1995, cfg) is None
        assert expected_count(matrix, 1995, cfg) is None
        assert not is_top(matrix, 0, 1995, cfg)


class TestExpectedCount:
    def test_mean_of_window(self) -> None:
        matrix = single_year([10, 6, 4, 2])
        assert expected_count(matrix, 2000, PercentileConfig(n_pct_range=0)) == Fraction(11, 2)

    def test_zero_counts_are_not_in_population(self) -> None:
        matrix = single_year([3, 0, 0, 1])
        assert expected_count(matrix, 2000, PercentileConfig(n_pct_range=0)) == 2

    def test_all_cited_once(self) -> None:
        matrix = single_year([1] * 20)
        cfg = PercentileConfig(p=0.5, n_pct_range=0)
        assert expected_count(matrix, 2000, cfg) == 1
        assert n_top_all(matrix, cfg) == [0] * 20

    def test_matches_rational_recomputation(self) -> None:
        rng = random.Random(8)
        rows = zipf_corpus(rng, 60)
        matrix = build_matrix(rows, (YEARS.start, YEARS.stop - 1))
        cfg = PercentileConfig(n_pct_range=2)
        for year in matrix.years:
            window = range(max(year - 2, 1980), min(year + 2, 2017) + 1)
            counts = [sum(row.counts_by_year.get(t, 0) for t in window) for row in rows]
            positive = [c for c in counts if c > 0]
            assert expected_count(matrix, year, cfg) == Fraction(sum(positive), len(positive))


class TestIsTop:
    def test_count_equal_to_threshold_is_not_top(self) -> None:
        matrix = single_year([9, 5, 5, 3])
        cfg = PercentileConfig(p=0.5, n_pct_range=0)
        assert threshold_count(matrix, 2000, cfg) == 5
        assert [is_top(matrix, row, 2000, cfg) for row in range(4)] == [True, False, False, False]

    def test_above_threshold_but_not_above_mean(self) -> None:
        matrix = single_year([100, 3, 1, 1])
        cfg = PercentileConfig(p=0.5, n_pct_range=0)
        assert threshold_count(matrix, 2000, cfg) == 1
        assert is_top(matrix, 0, 2000, cfg)
        assert not is_top(matrix, 1, 2000, cfg)

    def test_accepts_merged_reference(self) -> None:
        rows = [merged("A", {2000: 9}), merged("B", {2000: 1}), merged("C", {2000: 1})]
        matrix = build_matrix(rows, (2000, 2000))
        cfg = PercentileConfig(p=0.5, n_pct_range=0)
        assert is_top(matrix, rows[0], 2000, cfg)
        assert not is_top(matrix, rows[1], 2000, cfg)

    def test_higher_count_inherits_membership(self) -> None:
        rng = random.Random(31)
        rows = zipf_corpus(rng, 80)
        matrix = build_matrix(rows, (1980, 2017))
        cfg = PercentileConfig(p=0.1, n_pct_range=1)
        for year in range(1980, 2018, 5):
            column = matrix.window_column(year, 1)
            members = [row for row in range(len(rows)) if is_top(matrix, row, year, cfg)]
            if not members:
                continue
            lowest = min(int(column[row]) for row in members)
            assert all(is_top(matrix, row, year, cfg) for row in range(len(rows)) if column[row] >= lowest)


class TestNTop:
    def test_never_cited_is_zero(self) -> None:
        rows = [merged("A", {2000: 5}), merged("B", {})]
        matrix = build_matrix(rows, (2000, 2002))
        assert n_top(matrix, rows[1], PercentileConfig(p=0.5)) == 0

    def test_unique_maximum_every_year(self) -> None:
        landmark = merged("LANDMARK", {year: 100 for year in YEARS}, rpy=1950)
        background = [
            merged(f"BG {i}", {year: 1 + (i + year) % 5 for year in YEARS}, rpy=1960)
            for i in range(1100)
        ]
        matrix = build_matrix([landmark, *background], (1980, 2017))
        cfg = PercentileConfig(p=0.001, n_pct_range=2)
        assert n_top(matrix, landmark, cfg) == 38
        assert n_top_all(matrix, cfg)[0] == 38

    def test_restricted_year_range(self) -> None:
        rows = [merged("A", {year: 10 for year in range(2000, 2010)}), merged("B", {2000: 1}), merged("C", {2005: 1})]
        matrix = build_matrix(rows, (2000, 2009))
        cfg = PercentileConfig(p=0.5, n_pct_range=0)
        assert n_top(matrix, 0, cfg, ImportWindow(min_year=2000, max_year=2005)) == 2
        assert n_top_all(matrix, cfg, ImportWindow(min_year=1990, max_year=2004)) == [1, 0, 0]

    def test_bounded_by_number_of_years(self) -> None:
        rows = zipf_corpus(random.Random(3), 100)
        matrix = build_matrix(rows, (1980, 2017))
        assert all(0 <= value <= 38 for value in n_top_all(matrix, PercentileConfig(p=0.1)))

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_brute_force_oracle(self, seed: int) -> None:
        rng = random.Random(seed)
        rows = zipf_corpus(rng, rng.randint(20, 250))
        p = rng.choice([0.001, 0.01, 0.1, 0.2])
        r = rng.randint(0, 2)
        cfg = PercentileConfig(p=p, n_pct_range=r)
        matrix = build_matrix(rows, (1980, 2017))

        members = {year: oracle_members(rows, year, Fraction(str(p)), r) for year in YEARS}
        expected = [sum(1 for year in YEARS if row in members[year]) for row in range(len(rows))]
        assert n_top_all(matrix, cfg) == expected

        year = rng.choice(YEARS)
        assert {row for row in range(len(rows)) if is_top(matrix, row, year, cfg)} == members[year]
        sample = rng.sample(range(len(rows)), 5)
        assert [n_top(matrix, row, cfg) for row in sample] == [expected[row] for row in sample]

    @pytest.mark.parametrize("seed", range(4))
    def test_large_windows_match_oracle_at_one_per_mille(self, seed: int) -> None:
        rng = random.Random(100 + seed)
        rows = zipf_corpus(rng, rng.randint(1800, 3000))
        r = rng.randint(1, 2)
        cfg = PercentileConfig(p=0.001, n_pct_range=r)
        matrix = build_matrix(rows, (1980, 2017))
        assert max(item.n for item in year_thresholds(matrix, cfg)) >= 1000

        members = {year: oracle_members(rows, year, Fraction(1, 1000), r) for year in YEARS}
        expected = [sum(1 for year in YEARS if row in members[year]) for row in range(len(rows))]
        assert n_top_all(matrix, cfg) == expected

    def test_threads_do_not_change_result(self) -> None:
        rows = zipf_corpus(random.Random(10), 200)
        matrix = build_matrix(rows, (1980, 2017))
        cfg = PercentileConfig(p=0.1)
        assert n_top_all(matrix, cfg, threads=4) == n_top_all(matrix, cfg, threads=1)
        assert year_thresholds(matrix, cfg, threads=4) == year_thresholds(matrix, cfg)


SHORT_SPAN = range(2000, 2008)


def small_corpus(rng: random.Random) -> list[MergedCR]:
    """A handful of references over eight citing years, for property loops."""
    rows = []
    for i in range(rng.randint(1, 25)):
        counts = {year: rng.randint(1, 12) for year in SHORT_SPAN if rng.random() < 0.5}
        rows.append(merged(f"REF {i}", counts or {rng.choice(SHORT_SPAN): 1}))
    return rows


class TestProperties:
    def test_scaling_counts_keeps_membership(self) -> None:
        rng = random.Random(21)
        for _ in range(1000):
            rows = small_corpus(rng)
            k = rng.randint(2, 9)
            scaled = [
                merged(row.canonical_raw, {y: c * k for y, c in row.counts_by_year.items()})
                for row in rows
            ]
            cfg = PercentileConfig(p=rng.choice([0.001, 0.01, 0.1, 0.3]), n_pct_range=rng.randint(0, 2))
            original = build_matrix(rows, SHORT_SPAN)
            bigger = build_matrix(scaled, SHORT_SPAN)
            assert n_top_all(bigger, cfg) == n_top_all(original, cfg)

    def test_larger_p_never_lowers_n_top(self) -> None:
        rng = random.Random(22)
        for _ in range(1000):
            matrix = build_matrix(small_corpus(rng), SHORT_SPAN)
            r = rng.randint(0, 2)
            per_mille, percent, ten_percent = (
                n_top_all(matrix, PercentileConfig(p=p, n_pct_range=r)) for p in (0.001, 0.01, 0.1)
            )
            assert all(a <= b <= c for a, b, c in zip(per_mille, percent, ten_percent))

    def test_all_equal_counts_have_no_top(self) -> None:
        rng = random.Random(23)
        for _ in range(1000):
            count = rng.randint(1, 20)
            rows = [merged(f"REF {i}", {2000: count}) for i in range(rng.randint(1, 40))]
            matrix = build_matrix(rows, (2000, 2000))
            cfg = PercentileConfig(p=rng.choice([0.001, 0.01, 0.1, 0.5]), n_pct_range=rng.randint(0, 2))
            assert threshold_count(matrix, 2000, cfg) == count
            assert n_top_all(matrix, cfg) == [0] * len(rows)

    def test_year_thresholds_cover_every_year(self) -> None:
        rows = zipf_corpus(random.Random(1), 30)
        matrix = build_matrix(rows, (1980, 2017))
        found = year_thresholds(matrix, PercentileConfig(p=0.1))
        assert [item.year for item in found] == list(YEARS)
        for item in found:
            assert item.n > 0
            assert item.expected == Fraction(item.total, item.n)
