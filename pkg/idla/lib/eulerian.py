"""
Eulerova čísla, permutace a q-Eulerova čísla.

Řádky Eulerova trojúhelníku z rekurence i hrubou silou přes permutace,
bivariantní Eulerovy polynomy a q-analogie vážené major indexem.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .algebra import BivariatePolynomial, Polynomial, RationalLike, poly_eval

# Hrubá síla přes n! permutací; 9! = 362 880
MAX_BRUTE_N = 9


@dataclass(frozen=True)
class EulerianRow:
    """Řádek n Eulerova trojúhelníku, index k = počet descentů (0..n-1)."""

    n: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"EulerianRow vyžaduje n >= 1: {self.n}")
        if len(self.entries) != self.n:
            raise ValueError(f"Řádek {self.n} musí mít {self.n} položek, má {len(self.entries)}")

    def __getitem__(self, k: int) -> int:
        return self.entries[k]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def total(self) -> int:
        return sum(self.entries)

    def is_symmetric(self) -> bool:
        return self.entries == tuple(reversed(self.entries))


@dataclass(frozen=True)
class Permutation:
    """Permutace množiny {1..n} zapsaná jednořádkově."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"Není permutace {{1..{len(values)}}}: {values}")
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return len(self.values)

    def descents(self) -> List[int]:
        """Pozice i (1-indexované), kde w(i) > w(i+1)."""
        return [i + 1 for i in range(len(self.values) - 1) if self.values[i] > self.values[i + 1]]

    def descent_count(self) -> int:
        return len(self.descents())

    def major_index(self) -> int:
        return sum(self.descents())


@dataclass(frozen=True)
class QEulerianRow:
    """Řádek q-Eulerových čísel; položka k je polynom v ρ."""

    n: int
    entries: Tuple[Polynomial, ...]

    def __getitem__(self, k: int) -> Polynomial:
        return self.entries[k]

    def __len__(self) -> int:
        return self.n

    def evaluate(self, rho: RationalLike) -> List[Fraction]:
        return [poly_eval(p, rho) for p in self.entries]


def eulerian_row(n: int) -> EulerianRow:
    """
    Řádek n z rekurence <n,k> = (n-k)<n-1,k-1> + (k+1)<n-1,k>.

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"eulerian_row vyžaduje n >= 1: {n}")
    row = [1]
    for m in range(2, n + 1):
        prev = row
        row = []
        for k in range(m):
            left = prev[k - 1] if k >= 1 else 0
            right = prev[k] if k < m - 1 else 0
            row.append((m - k) * left + (k + 1) * right)
    return EulerianRow(n, tuple(row))


def next_permutation(values: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Lexikograficky následující permutace, None pro poslední.
    """
    w = list(values)
    i = len(w) - 2
    while i >= 0 and w[i] >= w[i + 1]:
        i -= 1
    if i < 0:
        return None
    j = len(w) - 1
    while w[j] <= w[i]:
        j -= 1
    w[i], w[j] = w[j], w[i]
    w[i + 1:] = reversed(w[i + 1:])
    return tuple(w)


def permutations_lex(n: int) -> Iterator[Permutation]:
    """Všechny permutace {1..n} v lexikografickém pořadí (bez rekurze)."""
    if n < 0:
        raise ValueError(f"n musí být nezáporné: {n}")
    current: Optional[Tuple[int, ...]] = tuple(range(1, n + 1))
    while current is not None:
        yield Permutation(current)
        current = next_permutation(current)


def _check_brute_bound(n: int, name: str) -> None:
    if not 1 <= n <= MAX_BRUTE_N:
        raise ValueError(f"{name} vyžaduje 1 <= n <= {MAX_BRUTE_N}: {n}")


def eulerian_row_brute(n: int) -> EulerianRow:
    """
    Řádek n spočtením permutací podle počtu descentů.

    Raises:
        ValueError: Pokud n není v 1..9
    """
    _check_brute_bound(n, "eulerian_row_brute")
    counts = [0] * n
    for w in permutations_lex(n):
        counts[w.descent_count()] += 1
    return EulerianRow(n, tuple(counts))


def eulerian_polynomial(n: int) -> Polynomial:
    """A_n(x) = sum_{k=1..n} <n,k-1> x^k."""
    row = eulerian_row(n)
    return Polynomial((Fraction(0),) + tuple(Fraction(e) for e in row))


def bivariate_polynomial(n: int) -> BivariatePolynomial:
    """
    A_n(s,t) = sum_{k=1..n} <n,k-1> s^k t^(n+1-k).

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"bivariate_polynomial vyžaduje n >= 1: {n}")
    row = eulerian_row(n)
    return BivariatePolynomial({(k, n + 1 - k): row[k - 1] for k in range(1, n + 1)})


def major_index(w: Permutation) -> int:
    """Součet pozic descentů permutace."""
    return w.major_index()


def q_eulerian_row(n: int) -> QEulerianRow:
    """
    Položka k = suma rho^maj(w) přes permutace s des(w) = k.

    Raises:
        ValueError: Pokud n není v 1..9
    """
    _check_brute_bound(n, "q_eulerian_row")
    # Nejvyšší maj je n(n-1)/2
    max_maj = n * (n - 1) // 2
    table = [[0] * (max_maj + 1) for _ in range(n)]
    for w in permutations_lex(n):
        descents = w.descents()
        table[len(descents)][sum(descents)] += 1
    return QEulerianRow(n, tuple(Polynomial(tuple(Fraction(c) for c in row)) for row in table))


def q_integer(m: int, rho: RationalLike) -> Fraction:
    """[m] = 1 + rho + ... + rho^(m-1)."""
    if m < 0:
        raise ValueError(f"q_integer vyžaduje m >= 0: {m}")
    rho = Fraction(rho)
    return sum((rho ** i for i in range(m)), Fraction(0))


def q_factorial(n: int, rho: RationalLike) -> Fraction:
    """
    [n]! = [n][n-1]...[1]; pro rho = 1 je to n!.

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"q_factorial vyžaduje n >= 1: {n}")
    return math.prod((q_integer(m, rho) for m in range(1, n + 1)), start=Fraction(1))
