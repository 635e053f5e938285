"""
Přesná aritmetika pro idla.

Racionální čísla (Fraction), husté polynomy v jedné proměnné, řídké polynomy
ve dvou proměnných, useknuté formální mocninné řady a přesné řešení
třídiagonálních soustav. Žádná plovoucí čárka.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[int, Fraction]


def to_rational(value: Union[RationalLike, str]) -> Rational:
    """
    Převede int, Fraction nebo řetězec "a/b" na Rational.

    Raises:
        ValueError: Pokud hodnota není racionální číslo (např. float)
    """
    if isinstance(value, bool):
        raise ValueError(f"bool není racionální číslo: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValueError(f"Nepodporovaný typ pro Rational: {type(value).__name__}")


def parse_rational(text: str) -> Rational:
    """
    Parsuje "a/b" nebo "a" na Rational.

    Example:
        parse_rational("4/6") -> Fraction(2, 3)
    """
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("Prázdný řetězec není racionální číslo")
    if any(c in cleaned for c in ".eE"):
        raise ValueError(f"Očekávám tvar 'a/b', ne desetinné číslo: {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Nevalidní racionální číslo {text!r}: {e}")


def format_rational(value: RationalLike) -> str:
    """Serializuje Rational vždy jako "čitatel/jmenovatel"."""
    r = Fraction(value)
    return f"{r.numerator}/{r.denominator}"


def binomial(n: int, k: int) -> int:
    """
    Kombinační číslo C(n, k); 0 pro k < 0 nebo k > n.

    Raises:
        ValueError: Pokud n < 0
    """
    if n < 0:
        raise ValueError(f"binomial vyžaduje n >= 0: {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---- Polynomy v jedné proměnné ----

@dataclass(frozen=True)
class Polynomial:
    """
    Hustý polynom; index koeficientu = exponent.

    Kanonický tvar bez koncových nul, nulový polynom má prázdný seznam.
    """

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    @classmethod
    def of(cls, *coefficients: RationalLike) -> "Polynomial":
        return cls(tuple(Fraction(c) for c in coefficients))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def constant(cls, value: RationalLike) -> "Polynomial":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, exponent: int, coefficient: RationalLike = 1) -> "Polynomial":
        if exponent < 0:
            raise ValueError(f"Exponent musí být nezáporný: {exponent}")
        return cls((Fraction(0),) * exponent + (Fraction(coefficient),))

    @property
    def degree(self) -> Optional[int]:
        """Stupeň polynomu, None pro nulový polynom."""
        return len(self.coefficients) - 1 if self.coefficients else None

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coefficients):
            return self.coefficients[exponent]
        return Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            factor = Fraction(other)
            return Polynomial(tuple(c * factor for c in self.coefficients))
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        result = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                result[i + j] += a * b
        return Polynomial(tuple(result))

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for exponent, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if exponent == 0:
                terms.append(str(c))
            else:
                power = "x" if exponent == 1 else f"x^{exponent}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms)


def poly_eval(p: Polynomial, x: RationalLike) -> Fraction:
    """Přesné vyhodnocení Hornerovým schématem."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


# ---- Polynomy ve dvou proměnných ----

class BivariatePolynomial:
    """
    Řídký polynom v proměnných s, t: mapa (exp_s, exp_t) -> Rational.

    Nuly se neukládají, iterace je lexikografická podle exponentů.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], RationalLike]] = None):
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Exponenty musí být nezáporné: {(i, j)}")
            value = Fraction(c)
            if value != 0:
                cleaned[(i, j)] = value
        self._terms = dict(sorted(cleaned.items()))

    @property
    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def coefficient(self, exp_s: int, exp_t: int) -> Fraction:
        return self._terms.get((exp_s, exp_t), Fraction(0))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        merged: Dict[Tuple[int, int], Fraction] = dict(self._terms)
        for key, c in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return BivariatePolynomial(merged)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        product: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return BivariatePolynomial(product)

    def evaluate(self, s: RationalLike, t: RationalLike) -> Fraction:
        s, t = Fraction(s), Fraction(t)
        return sum((c * s ** i * t ** j for (i, j), c in self._terms.items()), Fraction(0))

    def mixed_partial(self) -> "BivariatePolynomial":
        """∂²/∂s∂t po členech: c·s^i·t^j -> c·i·j·s^(i-1)·t^(j-1)."""
        return BivariatePolynomial({
            (i - 1, j - 1): c * i * j
            for (i, j), c in self._terms.items()
            if i > 0 and j > 0
        })

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self._terms.items():
            factors = [] if c == 1 else [str(c)]
            if i:
                factors.append("s" if i == 1 else f"s^{i}")
            if j:
                factors.append("t" if j == 1 else f"t^{j}")
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)


# ---- Useknuté mocninné řady ----

class TruncatedSeries:
    """
    Formální mocninná řada v z useknutá na řád `order` (včetně).

    Výsledek operace nese minimální řád operandů; řád se nikdy tiše nezvyšuje.
    """

    __slots__ = ('order', 'coefficients')

    def __init__(self, coefficients: Sequence[RationalLike], order: Optional[int] = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError(f"Řád řady musí být nezáporný: {order}")
        if len(coeffs) != order + 1:
            raise ValueError(
                f"Řada řádu {order} potřebuje {order + 1} koeficientů, dostala {len(coeffs)}"
            )
        self.order = order
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[RationalLike], order: int) -> "TruncatedSeries":
        """
        Řada ze známého (konečného) rozvoje: doplní nuly nebo usekne na `order`.
        """
        if order < 0:
            raise ValueError(f"Řád řady musí být nezáporný: {order}")
        coeffs = [Fraction(c) for c in coefficients][:order + 1]
        coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        return cls(coeffs, order)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> "TruncatedSeries":
        return cls.from_coefficients(p.coefficients, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([1], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.order, self.coefficients))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"Nelze zvýšit řád {self.order} na {order}")
        return TruncatedSeries(self.coefficients[:order + 1], order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries([self[i] + other[i] for i in range(order + 1)], order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: Union["TruncatedSeries", RationalLike]) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            factor = Fraction(other)
            return TruncatedSeries([c * factor for c in self.coefficients], self.order)
        order = min(self.order, other.order)
        result = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            a = self[i]
            if a == 0:
                continue
            for j in range(order + 1 - i):
                result[i + j] += a * other[j]
        return TruncatedSeries(result, order)

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_div(self, other)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coefficients)
        return f"TruncatedSeries([{body}], order={self.order})"


def series_exp_linear(a: RationalLike, order: int) -> TruncatedSeries:
    """
    Rozvoj e^{a·z} do řádu `order`: koeficient z^n je a^n / n!.
    """
    if order < 0:
        raise ValueError(f"Řád řady musí být nezáporný: {order}")
    a = Fraction(a)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * a / n)
    return TruncatedSeries(coeffs, order)


def series_div(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """
    Podíl řad num / den do společného (minimálního) řádu.

    Raises:
        ZeroDivisionError: Pokud den má nulový absolutní člen (není invertibilní)
    """
    if den[0] == 0:
        raise ZeroDivisionError("Jmenovatel řady má nulový absolutní člen")
    order = min(num.order, den.order)
    inv_lead = 1 / den[0]
    result: List[Fraction] = []
    for n in range(order + 1):
        acc = num[n] - sum((result[i] * den[n - i] for i in range(n)), Fraction(0))
        result.append(acc * inv_lead)
    return TruncatedSeries(result, order)


# ---- Lineární soustavy ----

def solve_tridiagonal(lower: Sequence[RationalLike], diag: Sequence[RationalLike],
                      upper: Sequence[RationalLike], rhs: Sequence[RationalLike]) -> List[Fraction]:
    """
    Přesné řešení třídiagonální soustavy (Thomasův algoritmus).

    Args:
        lower: Subdiagonála, délka m-1 (lower[i] je v řádku i+1)
        diag: Diagonála, délka m
        upper: Superdiagonála, délka m-1 (upper[i] je v řádku i)
        rhs: Pravá strana, délka m

    Returns:
        List[Fraction]: Řešení x délky m

    Raises:
        ValueError: Pokud nesedí délky nebo je pivot nulový
    """
    m = len(diag)
    if m == 0:
        return []
    if len(rhs) != m or len(lower) != m - 1 or len(upper) != m - 1:
        raise ValueError(
            f"Nekonzistentní délky: diag={m}, rhs={len(rhs)}, lower={len(lower)}, upper={len(upper)}"
        )

    c_prime: List[Fraction] = []
    d_prime: List[Fraction] = []
    for i in range(m):
        pivot = Fraction(diag[i])
        if i > 0:
            pivot -= Fraction(lower[i - 1]) * c_prime[i - 1]
        if pivot == 0:
            raise ValueError(f"Singulární soustava: nulový pivot v řádku {i}")
        c_prime.append(Fraction(upper[i]) / pivot if i < m - 1 else Fraction(0))
        value = Fraction(rhs[i])
        if i > 0:
            value -= Fraction(lower[i - 1]) * d_prime[i - 1]
        d_prime.append(value / pivot)

    x = [Fraction(0)] * m
    x[-1] = d_prime[-1]
    for i in range(m - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] * x[i + 1]
    return x
