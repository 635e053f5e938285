"""
Unit testy pro idla/lib/eulerian.py
"""

import math
from fractions import Fraction

import pytest

from idla.lib.algebra import BivariatePolynomial, Polynomial
from idla.lib.eulerian import (
    MAX_BRUTE_N, EulerianRow, Permutation, bivariate_polynomial, eulerian_polynomial, eulerian_row,
    eulerian_row_brute, major_index, next_permutation, permutations_lex, q_eulerian_row, q_factorial, q_integer
)


class TestEulerianRow:
    """Testy pro Eulerův trojúhelník."""

    @pytest.mark.parametrize("n,expected", [
        (1, (1,)),
        (2, (1, 1)),
        (3, (1, 4, 1)),
        (4, (1, 11, 11, 1)),
        (5, (1, 26, 66, 26, 1)),
        (6, (1, 57, 302, 302, 57, 1)),
    ])
    def test_known_rows(self, n, expected):
        """Testuje známé řádky."""
        assert eulerian_row(n).entries == expected

    @pytest.mark.parametrize("n", range(1, MAX_BRUTE_N + 1))
    def test_recurrence_matches_brute_force(self, n):
        """Testuje shodu rekurence s výčtem permutací."""
        assert eulerian_row(n) == eulerian_row_brute(n)

    @pytest.mark.parametrize("n", range(1, 16))
    def test_symmetry_and_total(self, n):
        """Testuje symetrii a součet n!."""
        row = eulerian_row(n)
        assert row.is_symmetric()
        assert row.total() == math.factorial(n)

    def test_invalid_n(self):
        """Testuje neplatné n."""
        with pytest.raises(ValueError):
            eulerian_row(0)
        with pytest.raises(ValueError):
            eulerian_row_brute(MAX_BRUTE_N + 1)
        with pytest.raises(ValueError):
            EulerianRow(3, (1, 4))


class TestPermutations:
    """Testy pro permutace."""

    def test_lex_order_n3(self):
        """Testuje lexikografické pořadí pro n=3."""
        assert [w.values for w in permutations_lex(3)] == [
            (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
        ]

    def test_count(self):
        """Testuje počet permutací."""
        assert sum(1 for _ in permutations_lex(6)) == 720

    def test_next_permutation_last(self):
        """Testuje poslední permutaci."""
        assert next_permutation((3, 2, 1)) is None

    def test_descents_and_major_index(self):
        """Testuje sestupy a major index."""
        w = Permutation((3, 1, 4, 2))
        assert w.descents() == [1, 3]
        assert w.descent_count() == 2
        assert major_index(w) == 4

    def test_invalid_permutation(self):
        """Testuje odmítnutí ne-permutace."""
        with pytest.raises(ValueError, match="Není permutace"):
            Permutation((1, 1, 2))


class TestPolynomials:
    """Testy pro Eulerovy polynomy."""

    def test_eulerian_polynomial(self):
        """Testuje A_3(t)."""
        assert eulerian_polynomial(3) == Polynomial.of(0, 1, 4, 1)

    def test_bivariate_n3(self):
        """Testuje A_3(s,t)."""
        expected = BivariatePolynomial({(1, 3): 1, (2, 2): 4, (3, 1): 1})
        assert bivariate_polynomial(3) == expected

    @pytest.mark.parametrize("n", range(1, 8))
    def test_bivariate_homogeneity(self, n):
        """Testuje homogenitu A_n(s,t)."""
        # A_n(s,t) = t^(n+1) A_n(s/t)
        poly = bivariate_polynomial(n)
        s, t = Fraction(3, 2), Fraction(-2, 5)
        assert poly.evaluate(s, t) == t ** (n + 1) * eulerian_polynomial(n)(s / t)


class TestQEulerian:
    """Testy pro q-Eulerova čísla."""

    def test_q_integer_and_factorial(self):
        """Testuje q-čísla a q-faktoriál."""
        assert q_integer(0, 2) == 0
        assert q_integer(3, 2) == 7
        assert q_factorial(3, 2) == 1 * 3 * 7
        assert q_factorial(5, 1) == 120

    def test_row_n3(self):
        """Testuje řádek pro n=3."""
        row = q_eulerian_row(3)
        # 123 -> maj 0; 132, 213, 231, 312 -> des 1; 321 -> maj 3
        assert row[0] == Polynomial.of(1)
        assert row[1] == Polynomial.of(0, 2, 2)
        assert row[2] == Polynomial.monomial(3)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_sums_to_q_factorial(self, n):
        """Testuje, že součet řádku je q-faktoriál."""
        rho = Fraction(2, 3)
        assert sum(q_eulerian_row(n).evaluate(rho)) == q_factorial(n, rho)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_at_one_is_eulerian(self, n):
        """Testuje, že v q=1 dostaneme Eulerova čísla."""
        assert tuple(q_eulerian_row(n).evaluate(1)) == eulerian_row(n).entries

    def test_invalid(self):
        """Testuje neplatné vstupy."""
        with pytest.raises(ValueError):
            q_eulerian_row(0)
        with pytest.raises(ValueError):
            q_factorial(0, 2)
        with pytest.raises(ValueError):
            q_integer(-1, 2)
