"""
Unit testy pro idla/lib/stats.py
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from scipy.stats import chi2

from idla.lib.stats import (
    binomial_band, cells_within_band, chi_square, pool_cells, sse, wilson_hilferty_quantile
)


class TestSSE:
    """Testy pro součet čtverců odchylek."""

    def test_value(self):
        """Testuje hodnotu."""
        assert sse([0.2, 0.5, 0.3], [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]) == pytest.approx(0.005)

    def test_zero(self):
        """Testuje nulovou odchylku."""
        assert sse([Fraction(1, 6), Fraction(2, 3)], [Fraction(1, 6), Fraction(2, 3)]) == 0.0

    def test_length_mismatch(self):
        """Testuje nesouhlasné délky."""
        with pytest.raises(ValueError, match="Délky"):
            sse([0.5, 0.5], [1.0])


class TestPooling:
    """Testy pro slučování buněk."""

    def test_pools_toward_center(self):
        """Testuje slučování směrem ke středu."""
        assert pool_cells([1, 2, 50, 30, 3]) == [[0, 1, 2], [3, 4]]

    def test_no_pooling_needed(self):
        """Testuje případ bez slučování."""
        assert pool_cells([10, 20, 10]) == [[0], [1], [2]]

    def test_everything_small(self):
        """Testuje samé malé buňky."""
        assert pool_cells([1, 1, 1]) == [[0, 1, 2]]

    def test_empty(self):
        """Testuje prázdný vstup."""
        assert pool_cells([]) == []

    @given(st.lists(st.floats(min_value=0, max_value=100, allow_nan=False), min_size=1, max_size=12))
    def test_partition_preserves_order_and_mass(self, expected):
        """Testuje zachování pořadí a hmoty."""
        groups = pool_cells(expected)
        assert [i for group in groups for i in group] == list(range(len(expected)))
        if len(groups) > 1:
            assert all(sum(expected[i] for i in group) >= 5.0 - 1e-9 for group in groups)


class TestThreshold:
    """Testy pro prahy a pásy."""

    @pytest.mark.parametrize("dof", [3, 5, 10, 30])
    def test_close_to_exact_quantile(self, dof):
        """Testuje blízkost k přesnému kvantilu."""
        assert wilson_hilferty_quantile(dof, 1e-3) == pytest.approx(chi2.ppf(1 - 1e-3, dof), rel=0.02)

    def test_invalid(self):
        """Testuje neplatné stupně volnosti."""
        with pytest.raises(ValueError):
            wilson_hilferty_quantile(0)
        with pytest.raises(ValueError):
            wilson_hilferty_quantile(3, 1.5)

    def test_binomial_band(self):
        """Testuje binomický pás."""
        assert binomial_band(0.5, 100) == pytest.approx(0.25)
        assert binomial_band(0.0, 100) == 0.0
        with pytest.raises(ValueError):
            binomial_band(0.5, 0)

    def test_cells_within_band(self):
        """Testuje buňky uvnitř pásu."""
        result = cells_within_band([260, 480, 260], [0.25, 0.5, 0.25], 1000)
        assert result == [(0, True), (1, True), (2, True)]
        result = cells_within_band([400, 200, 400], [0.25, 0.5, 0.25], 1000)
        assert [ok for _, ok in result] == [False, False, False]


class TestChiSquare:
    """Testy pro chi-kvadrát."""

    def test_proportional_counts(self):
        """Testuje úměrné četnosti."""
        report = chi_square([250, 500, 250], [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)], 1000)
        assert report.chi_square_statistic == 0.0
        assert report.degrees_of_freedom == 2
        assert report.passes
        assert report.sse == 0.0
        assert report.per_cell_z_scores == [0.0, 0.0, 0.0]

    def test_gross_misfit(self):
        """Testuje hrubý nesoulad."""
        report = chi_square([500, 0, 500], [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)], 1000)
        assert not report.passes
        assert report.max_abs_deviation == pytest.approx(0.5)
        assert report.per_cell_z_scores[1] < -20

    def test_zero_probability_cell(self):
        """Testuje buňku s nulovou pravděpodobností."""
        report = chi_square([5, 995], [0, 1], 1000)
        assert math.isinf(report.chi_square_statistic)
        assert not report.passes

    def test_single_group_has_zero_dof(self):
        """Testuje jednu skupinu s nula stupni volnosti."""
        report = chi_square([0, 10], [0, 1], 10)
        assert report.degrees_of_freedom == 0
        assert report.threshold == 0.0
        assert report.passes

    def test_small_cells_are_pooled(self):
        """Testuje sloučení malých buněk."""
        exact = [Fraction(1, 1000), Fraction(998, 1000), Fraction(1, 1000)]
        report = chi_square([1, 998, 1], exact, 1000)
        assert report.pooled_cells == [[0, 1, 2]]

    @pytest.mark.parametrize("counts,trials", [([1, 2], 0), ([1, 2, 3], 6), ([1, 2], 4)])
    def test_invalid(self, counts, trials):
        """Testuje neplatné vstupy."""
        with pytest.raises(ValueError):
            chi_square(counts, [0.5, 0.5], trials)
