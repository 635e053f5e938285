"""
Unit testy pro idla/lib/runtime.py
"""

from fractions import Fraction

import pytest

from idla.lib.runtime import (
    DELTA_SERIES_LOW_TERMS, closed_form_delta_E, closed_form_E, corollary_weighted_sum, delta_series,
    delta_series_check, delta_series_mismatches, egf_coefficients, four_piece_coefficient,
    mixed_partial_weighted_sum, runtime_report, runtime_table, univariate_egf_check
)


class TestClosedForms:
    """Testy pro uzavřené vzorce."""

    @pytest.mark.parametrize("n,expected", [(3, 3), (6, 21), (20, 700), (1, Fraction(1, 6))])
    def test_closed_form_E(self, n, expected):
        """Testuje E_n."""
        assert closed_form_E(n) == expected

    def test_closed_form_delta_E(self):
        """Testuje přírůstek E_n."""
        assert closed_form_delta_E(6) == Fraction(17, 2)
        assert closed_form_delta_E(4) == Fraction(11, 3)

    @pytest.mark.parametrize("n", range(3, 30))
    def test_delta_is_difference(self, n):
        """Testuje, že přírůstek je rozdíl E_n."""
        assert closed_form_E(n) - closed_form_E(n - 1) == closed_form_delta_E(n)

    def test_invalid(self):
        """Testuje neplatné n."""
        with pytest.raises(ValueError):
            closed_form_E(0)
        with pytest.raises(ValueError):
            closed_form_delta_E(0)


class TestWeightedSums:
    """Testy pro vážené součty."""

    def test_corollary_n4(self):
        """Testuje vážený součet pro n=4."""
        assert corollary_weighted_sum(4) == Fraction(11, 3)

    def test_mixed_partial_n6(self):
        """Testuje smíšenou derivaci pro n=6."""
        assert mixed_partial_weighted_sum(6) == 1020

    @pytest.mark.parametrize("n", range(3, 15))
    def test_corollary_equals_closed_delta(self, n):
        """Testuje shodu váženého součtu s přírůstkem."""
        assert corollary_weighted_sum(n) == closed_form_delta_E(n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_small_n_rejected(self, n):
        """Testuje odmítnutí malého n."""
        with pytest.raises(ValueError):
            corollary_weighted_sum(n)
        with pytest.raises(ValueError):
            mixed_partial_weighted_sum(n)


class TestGeneratingFunctions:
    """Testy pro generující funkce."""

    def test_egf_x2(self):
        """Testuje EGF v x=2."""
        series = egf_coefficients(2, 4)
        assert series[0] == 0
        assert series[1] == 2
        assert series[3] == Fraction(13, 3)

    @pytest.mark.parametrize("x", [0, 2, Fraction(1, 2), -1, Fraction(3, 4)])
    def test_univariate_check(self, x):
        """Testuje kontrolu jedné proměnné."""
        assert univariate_egf_check(x, 10)

    def test_egf_rejects_x1(self):
        """Testuje odmítnutí x=1."""
        with pytest.raises(ValueError, match="x = 1"):
            egf_coefficients(1, 5)

    @pytest.mark.parametrize("order", [0, 13])
    def test_egf_order_bounds(self, order):
        """Testuje meze řádu."""
        with pytest.raises(ValueError):
            egf_coefficients(2, order)

    def test_delta_series_low_terms(self):
        """Testuje první členy řady přírůstků."""
        series = delta_series(5)
        assert series[0] == 0
        assert tuple(series[n] for n in (1, 2, 3)) == DELTA_SERIES_LOW_TERMS
        assert series[4] == Fraction(35, 6)

    def test_delta_series_check(self):
        """Testuje kontrolu řady přírůstků."""
        assert delta_series_mismatches(30) == []
        assert delta_series_check(40)

    @pytest.mark.parametrize("n", range(1, 20))
    def test_four_piece(self, n):
        """Testuje rozklad na čtyři části."""
        assert four_piece_coefficient(n) == delta_series(20)[n]

    def test_delta_series_bounds(self):
        """Testuje meze řady přírůstků."""
        with pytest.raises(ValueError):
            delta_series(41)


class TestRuntimeReport:
    """Testy pro tabulku doby hry."""

    def test_n1(self):
        """Testuje řádek pro n=1."""
        report = runtime_report(1)
        assert report.E_n == 0
        assert report.closed_form_E == Fraction(1, 6)
        assert not report.closed_form_applies
        assert report.corollary_sum is None
        assert report.agreement

    def test_n6(self):
        """Testuje řádek pro n=6."""
        report = runtime_report(6)
        assert report.E_n == 21
        assert report.delta_E_n == Fraction(17, 2)
        assert report.corollary_sum == Fraction(17, 2)
        assert report.closed_form_match

    def test_table_agrees(self):
        """Testuje shodu celé tabulky."""
        table = runtime_table(30)
        assert [r.n for r in table] == list(range(1, 31))
        assert all(r.agreement for r in table)
        assert table[-1].E_n == closed_form_E(30)

    def test_previous_value_is_used(self):
        """Testuje použití předchozí hodnoty."""
        report = runtime_report(4, previous_E=Fraction(0))
        assert report.delta_E_n == report.E_n
        assert not report.agreement

    def test_invalid(self):
        """Testuje neplatné n."""
        with pytest.raises(ValueError):
            runtime_report(0)
        with pytest.raises(ValueError):
            runtime_table(0)
