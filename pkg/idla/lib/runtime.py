"""
Očekávaná doba hry: uzavřené vzorce a ověření přes generující funkce.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import RationalLike, TruncatedSeries, binomial, poly_eval, series_div, series_exp_linear
from .chain import expected_total_tosses
from .eulerian import bivariate_polynomial, eulerian_polynomial, eulerian_row

MAX_EGF_ORDER = 12
MAX_DELTA_SERIES_ORDER = 40

# Koeficienty z^1..z^3 vypsané u rozvoje řady přírůstků
DELTA_SERIES_LOW_TERMS = (Fraction(1), Fraction(2), Fraction(11, 3))


def closed_form_E(n: int) -> Fraction:
    """n^3/12 + n^2/12."""
    if n < 1:
        raise ValueError(f"closed_form_E vyžaduje n >= 1: {n}")
    return Fraction(n ** 3 + n ** 2, 12)


def closed_form_delta_E(n: int) -> Fraction:
    """n^2/4 - n/12; jako přírůstek E platí od n >= 3."""
    if n < 1:
        raise ValueError(f"closed_form_delta_E vyžaduje n >= 1: {n}")
    return Fraction(n * n, 4) - Fraction(n, 12)


def corollary_weighted_sum(n: int) -> Fraction:
    """
    sum_{k=1..n-1} <n-1,k-1>/(n-1)! * k(n-k).

    Raises:
        ValueError: Pokud n < 3
    """
    if n < 3:
        raise ValueError(f"corollary_weighted_sum vyžaduje n >= 3: {n}")
    row = eulerian_row(n - 1)
    norm = math.factorial(n - 1)
    return sum((Fraction(row[k - 1], norm) * k * (n - k) for k in range(1, n)), Fraction(0))


def mixed_partial_weighted_sum(n: int) -> Fraction:
    """
    d^2/ds dt A_{n-1}(s,t) v bodě (1,1); rovná se (n-1)! * dE_n.

    Raises:
        ValueError: Pokud n < 3
    """
    if n < 3:
        raise ValueError(f"mixed_partial_weighted_sum vyžaduje n >= 3: {n}")
    return bivariate_polynomial(n - 1).mixed_partial().evaluate(1, 1)


# ---- Generující funkce ----

def egf_coefficients(x: RationalLike, order: int) -> TruncatedSeries:
    """
    Rozvoj G(x,z) = x(1 - e^{z(x-1)}) / (e^{z(x-1)} - x) do řádu `order`.

    Raises:
        ValueError: Pokud x == 1 nebo order mimo 1..12
    """
    x = Fraction(x)
    if x == 1:
        raise ValueError("univariate EGF nelze rozvinout v x = 1 (jmenovatel má nulový absolutní člen)")
    if not 1 <= order <= MAX_EGF_ORDER:
        raise ValueError(f"order musí ležet v 1..{MAX_EGF_ORDER}: {order}")
    exp_term = series_exp_linear(x - 1, order)
    one = TruncatedSeries.one(order)
    numerator = (one - exp_term) * x
    denominator = exp_term - one * x
    return series_div(numerator, denominator)


def univariate_egf_check(x: RationalLike, order: int) -> bool:
    """Koeficient z^n v G(x,z) == A_n(x)/n! pro 1 <= n <= order."""
    series = egf_coefficients(x, order)
    return all(
        series[n] == poly_eval(eulerian_polynomial(n), x) / math.factorial(n)
        for n in range(1, order + 1)
    )


def delta_series(order: int) -> TruncatedSeries:
    """Rozvoj (z^4 - 4z^3 + 6z^2 - 6z) / (6(z-1)^3)."""
    if not 1 <= order <= MAX_DELTA_SERIES_ORDER:
        raise ValueError(f"order musí ležet v 1..{MAX_DELTA_SERIES_ORDER}: {order}")
    numerator = TruncatedSeries.from_coefficients([0, -6, 6, -4, 1], order)
    denominator = TruncatedSeries.from_coefficients([-6, 18, -18, 6], order)
    return series_div(numerator, denominator)


def four_piece_coefficient(n: int) -> Fraction:
    """
    Koeficient z^n složený ze čtyř posunutých řad 1/(1-z)^3.

    C(n+1,2) - C(n,2) + 2/3 C(n-1,2) - 1/6 C(n-2,2); poslední člen má záporné znaménko.
    """
    return (
        binomial(n + 1, 2) - binomial(n, 2)
        + Fraction(2, 3) * binomial(n - 1, 2)
        - Fraction(1, 6) * binomial(max(n - 2, 0), 2)
    )


def delta_series_mismatches(order: int) -> List[Tuple[int, str, Fraction, Fraction]]:
    """
    Všechny nesouhlasy rozvoje řady přírůstků.

    Returns:
        Seznam (n, kontrola, koeficient, očekávaná hodnota); prázdný seznam = vše sedí
    """
    series = delta_series(order)
    mismatches: List[Tuple[int, str, Fraction, Fraction]] = []

    def expect(n: int, label: str, expected: Fraction) -> None:
        if series[n] != expected:
            mismatches.append((n, label, series[n], expected))

    expect(0, "constant", Fraction(0))
    for n in range(1, order + 1):
        # z^1 je E_2 - E_1 = 1; uzavřený přírůstek platí až od n+1 >= 3
        delta = Fraction(1) if n == 1 else closed_form_delta_E(n + 1)
        expect(n, "delta_E", delta)
        expect(n, "four_piece", four_piece_coefficient(n))
        if n <= len(DELTA_SERIES_LOW_TERMS):
            expect(n, "low_order", DELTA_SERIES_LOW_TERMS[n - 1])
        if n >= 4:
            expect(n, "quadratic", Fraction(n * n, 4) + Fraction(5 * n, 12) + Fraction(1, 6))
    return mismatches


def delta_series_check(order: int) -> bool:
    return not delta_series_mismatches(order)


# ---- Reporty ----

@dataclass(frozen=True)
class RuntimeReport:
    """
    Řádek tabulky doby hry.

    E_n a delta_E_n pochází z přesného řetězce, corollary_sum z Eulerových čísel
    (jen pro n >= 3). agreement = vnitřní konzistence a shoda s uzavřeným vzorcem
    tam, kde platí (n >= 2).
    """

    n: int
    E_n: Fraction
    delta_E_n: Fraction
    corollary_sum: Optional[Fraction]
    closed_form_E: Fraction
    closed_form_delta_E: Fraction
    closed_form_applies: bool
    closed_form_match: bool
    agreement: bool


def runtime_report(n: int, previous_E: Optional[Fraction] = None) -> RuntimeReport:
    """
    Porovná E_n z řetězce s uzavřenými vzorci a s váženou sumou.

    Args:
        n: Počet obsazených míst (>= 1)
        previous_E: Už spočtené E_{n-1} (volitelné, šetří výpočet v tabulce)
    """
    if n < 1:
        raise ValueError(f"runtime_report vyžaduje n >= 1: {n}")
    E_n = expected_total_tosses(n)
    if n == 1:
        previous = Fraction(0)
    elif previous_E is not None:
        previous = previous_E
    else:
        previous = expected_total_tosses(n - 1)
    delta = E_n - previous

    corollary = corollary_weighted_sum(n) if n >= 3 else None
    consistent = corollary is None or corollary == delta

    closed_E = closed_form_E(n)
    closed_delta = closed_form_delta_E(n)
    applies = n >= 2
    match = E_n == closed_E and (n < 3 or delta == closed_delta)
    return RuntimeReport(
        n=n,
        E_n=E_n,
        delta_E_n=delta,
        corollary_sum=corollary,
        closed_form_E=closed_E,
        closed_form_delta_E=closed_delta,
        closed_form_applies=applies,
        closed_form_match=match,
        agreement=consistent and (not applies or match),
    )


def runtime_table(max_n: int) -> List[RuntimeReport]:
    """RuntimeReport pro n = 1..max_n."""
    if max_n < 1:
        raise ValueError(f"max_n musí být >= 1: {max_n}")
    reports: List[RuntimeReport] = []
    previous: Optional[Fraction] = None
    for n in range(1, max_n + 1):
        report = runtime_report(n, previous)
        reports.append(report)
        previous = report.E_n
    return reports
