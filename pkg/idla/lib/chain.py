"""
Přesný Markovský engine pro IDLA hru na přímce.

Stavy s(n,k), přechodové pravděpodobnosti z ruinování hráče, přesné rozdělení
P(n,k), očekávané doby úniku, rozdělení počtu obsazených míst po N hodech
a zobecnění na nesymetrickou minci.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Generic, Hashable, Iterator, List, Optional, Tuple, TypeVar

from ..config import settings
from .algebra import RationalLike, parse_rational, solve_tridiagonal
from .eulerian import MAX_BRUTE_N, q_eulerian_row, q_factorial

L = TypeVar('L', bound=Hashable)


# ---- Typy ----

@dataclass(frozen=True)
class Bias:
    """Mince: p_right je pravděpodobnost kroku doprava, 0 < p_right < 1."""

    p_right: Fraction

    def __post_init__(self):
        p = self.p_right
        if isinstance(p, (bool, float)) or not isinstance(p, (int, Fraction)):
            raise ValueError(f"p_right musí být přesné racionální číslo: {p!r}")
        p = Fraction(p)
        if not 0 < p < 1:
            raise ValueError(f"p_right musí ležet v (0, 1): {p}")
        object.__setattr__(self, 'p_right', p)

    @classmethod
    def fair(cls) -> "Bias":
        return cls(Fraction(1, 2))

    @classmethod
    def parse(cls, text: str) -> "Bias":
        """Parsuje "p/q" nebo "a" na Bias."""
        return cls(parse_rational(text))

    @property
    def p_left(self) -> Fraction:
        return 1 - self.p_right

    @property
    def rho(self) -> Fraction:
        """rho = p_right / p_left."""
        return self.p_right / self.p_left

    @property
    def is_fair(self) -> bool:
        return self.p_right == Fraction(1, 2)

    def mirrored(self) -> "Bias":
        return Bias(self.p_left)


FAIR = Bias.fair()


@dataclass(frozen=True, order=True)
class MacroState:
    """s(n,k): n obsazených míst, k z nich vpravo od počátku."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.n - 1:
            raise ValueError(f"Nevalidní stav s({self.n},{self.k})")

    @property
    def left_count(self) -> int:
        """Obsazená místa striktně vlevo od počátku."""
        return self.n - 1 - self.k

    def exit_distances(self) -> Tuple[int, int]:
        """(vzdálenost k pravému, k levému volnému místu) pro částici z počátku."""
        return self.k + 1, self.left_count + 1

    def settle_right_probability(self, bias: Bias = FAIR) -> Fraction:
        """Pravděpodobnost, že další částice obsadí místo vpravo."""
        right_gap, left_gap = self.exit_distances()
        return gambler_win_prob(left_gap, right_gap, bias)


@dataclass(frozen=True, order=True)
class WalkerState:
    """
    Obsazený interval [-a, b] a pozice x právě putující částice.

    -a-1 <= x <= b+1; krajní hodnoty jen v okamžiku usazení.
    """

    a: int
    b: int
    x: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or not -self.a - 1 <= self.x <= self.b + 1:
            raise ValueError(f"Nevalidní WalkerState: a={self.a}, b={self.b}, x={self.x}")

    @property
    def occupied(self) -> int:
        return self.a + self.b + 1


class StateDistribution(Generic[L]):
    """
    Přesné rozdělení pravděpodobnosti přes stavy (k, n nebo jiné štítky).

    Pravděpodobnosti jsou nezáporné a sčítají se přesně na 1.
    """

    __slots__ = ('_support',)

    def __init__(self, support: Dict[L, RationalLike]):
        cleaned = {label: Fraction(p) for label, p in support.items()}
        negative = [label for label, p in cleaned.items() if p < 0]
        if negative:
            raise ValueError(f"Záporné pravděpodobnosti pro stavy: {negative}")
        total = sum(cleaned.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"Pravděpodobnosti se nesčítají na 1: {total}")
        self._support: Dict[L, Fraction] = dict(sorted(cleaned.items()))

    @property
    def support(self) -> Dict[L, Fraction]:
        return dict(self._support)

    def __getitem__(self, label: L) -> Fraction:
        return self._support.get(label, Fraction(0))

    def __iter__(self) -> Iterator[L]:
        return iter(self._support)

    def __len__(self) -> int:
        return len(self._support)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateDistribution):
            return NotImplemented
        return self._support == other._support

    def items(self):
        return self._support.items()

    def total(self) -> Fraction:
        return sum(self._support.values(), Fraction(0))

    def probabilities(self, labels) -> List[Fraction]:
        return [self[label] for label in labels]

    def __repr__(self) -> str:
        body = ", ".join(f"{label}: {p}" for label, p in self._support.items())
        return f"StateDistribution({{{body}}})"


# ---- Přechody a rozdělení P(n,k) ----

def transition_probs(n: int, k: int) -> Tuple[Fraction, Fraction]:
    """
    (p_{n,k}, q_{n,k}) pro symetrickou minci.

    p_{n,k}: z s(n-1,k) do s(n,k) (usazení vlevo) = (k+1)/n,
    q_{n,k}: z s(n-1,k-1) do s(n,k) (usazení vpravo) = (n-k)/n.
    Neexistující zdrojový stav dává 0.

    Raises:
        ValueError: Pokud n < 1 nebo k mimo 0..n-1
    """
    if n < 1:
        raise ValueError(f"transition_probs vyžaduje n >= 1: {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k musí ležet v 0..{n - 1}: {k}")
    p = Fraction(k + 1, n) if k <= n - 2 else Fraction(0)
    q = Fraction(n - k, n) if k >= 1 else Fraction(0)
    return p, q


def _propagate(prev: List[Fraction], m: int,
               transition: Callable[[int, int], Tuple[Fraction, Fraction]]) -> List[Fraction]:
    """Jeden krok DP: rozdělení přes k pro m-1 míst -> pro m míst."""
    row = []
    for k in range(m):
        p, q = transition(m, k)
        value = Fraction(0)
        if k <= m - 2:
            value += p * prev[k]
        if k >= 1:
            value += q * prev[k - 1]
        row.append(value)
    return row


Transition = Callable[[int, int], Tuple[Fraction, Fraction]]


def _biased_transition(bias: Bias) -> Transition:
    """Přechody (p_{m,k}, q_{m,k}) z pravděpodobností usazení vpravo."""
    def transition(m: int, k: int) -> Tuple[Fraction, Fraction]:
        p = Fraction(0)
        q = Fraction(0)
        if k <= m - 2:
            p = 1 - MacroState(m - 1, k).settle_right_probability(bias)
        if k >= 1:
            q = MacroState(m - 1, k - 1).settle_right_probability(bias)
        return p, q
    return transition


def _lattice_rows(n: int, transition: Transition) -> Iterator[List[Fraction]]:
    """Postupně vrací rozdělení přes k pro 1..n obsazených míst."""
    row = [Fraction(1)]
    yield row
    for m in range(2, n + 1):
        row = _propagate(row, m, transition)
        yield row


def _last_row(n: int, transition: Transition) -> List[Fraction]:
    row: List[Fraction] = []
    for row in _lattice_rows(n, transition):
        pass
    return row


def exact_distribution(n: int) -> StateDistribution[int]:
    """
    P(n,k) dynamickým programováním přes mřížku stavů (symetrická mince).

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"exact_distribution vyžaduje n >= 1: {n}")
    return StateDistribution(dict(enumerate(_last_row(n, transition_probs))))


def exact_distribution_biased(n: int, bias: Bias) -> StateDistribution[int]:
    """
    P(n,k) pro nesymetrickou minci; přechody z gambler_win_prob (lineární soustava).

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"exact_distribution_biased vyžaduje n >= 1: {n}")
    return StateDistribution(dict(enumerate(_last_row(n, _biased_transition(bias)))))


# ---- Ruinování hráče a doby úniku ----

def _first_step_system(length: int, bias: Bias, rhs: List[Fraction]) -> List[Fraction]:
    """Vnitřní pozice 1..length-1 intervalu s absorpcí v 0 a length."""
    size = length - 1
    p, q = bias.p_right, bias.p_left
    return solve_tridiagonal([-q] * (size - 1), [Fraction(1)] * size, [-p] * (size - 1), rhs)


@lru_cache(maxsize=None)
def _win_profile(total: int, bias: Bias) -> Tuple[Fraction, ...]:
    """h(i) pro i = 1..total-1: pravděpodobnost dojít z i do total dřív než do 0."""
    rhs = [Fraction(0)] * (total - 1)
    rhs[-1] = bias.p_right  # h(total) = 1
    return tuple(_first_step_system(total, bias, rhs))


@lru_cache(maxsize=None)
def _escape_profile(length: int, bias: Bias) -> Tuple[Fraction, ...]:
    """Očekávaná doba absorpce z vnitřních pozic 1..length-1."""
    return tuple(_first_step_system(length, bias, [Fraction(1)] * (length - 1)))


def gambler_win_prob(k: int, l: int, bias: Bias = FAIR) -> Fraction:
    """
    Pravděpodobnost, že hráč A s k dolary porazí hráče B s l dolary.

    A získává dolar při kroku doprava (s pravděpodobností bias.p_right).
    Počítáno z první-krokové soustavy h(i) = p h(i+1) + q h(i-1),
    h(0) = 0, h(k+l) = 1, ne z uzavřeného vzorce. Jedno řešení soustavy
    pokrývá všechna k se stejným k+l.

    Raises:
        ValueError: Pokud k < 1 nebo l < 1
    """
    if k < 1 or l < 1:
        raise ValueError(f"gambler_win_prob vyžaduje k, l >= 1: k={k}, l={l}")
    return _win_profile(k + l, bias)[k - 1]


def escape_time(a: int, b: int, bias: Bias = FAIR) -> Fraction:
    """
    Očekávaný počet hodů, než chodec z 0 opustí otevřený interval (-b, a).

    Počítáno z první-krokové soustavy E(i) = 1 + p E(i+1) + q E(i-1),
    E(-b) = E(a) = 0. Pro symetrickou minci vychází a*b.

    Raises:
        ValueError: Pokud a < 1 nebo b < 1
    """
    if a < 1 or b < 1:
        raise ValueError(f"escape_time vyžaduje a, b >= 1: a={a}, b={b}")
    # Posunutí o b: levý okraj -b je 0, start 0 je pozice b
    return _escape_profile(a + b, bias)[b - 1]


def expected_total_tosses(n: int, bias: Bias = FAIR) -> Fraction:
    """
    E_n: očekávaný počet hodů, než je obsazeno n míst.

    Suma přes usazované částice 2..n: sum_k P(m-1,k) * escape_time z s(m-1,k).
    Všechny stavy s m-1 místy mají interval úniku délky m, takže na každou
    úroveň stačí jedna soustava. E_1 = 0, E_2 = 1.

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"expected_total_tosses vyžaduje n >= 1: {n}")
    if n == 1:
        return Fraction(0)
    transition = transition_probs if bias.is_fair else _biased_transition(bias)
    total = Fraction(0)
    for m, row in enumerate(_lattice_rows(n - 1, transition), start=2):
        for k, prob in enumerate(row):
            right_gap, left_gap = MacroState(m - 1, k).exit_distances()
            total += prob * escape_time(right_gap, left_gap, bias)
    return total


# ---- Chodci a N hodů ----

def _check_ntoss_cap(N: int, cap: Optional[int]) -> int:
    if cap is None:
        cap = settings.ntoss_cap
    if N < 0:
        raise ValueError(f"N musí být nezáporné: {N}")
    if N > cap:
        raise ValueError(f"N={N} překračuje strop {cap} (zvyš IDLA_NTOSS_CAP)")
    return cap


def _toss(state: WalkerState, step: int) -> Tuple[WalkerState, bool]:
    """
    Jeden hod: posun o step; na volném místě se částice usadí a další začíná v 0.

    Returns:
        (nový stav, True pokud došlo k usazení)
    """
    x = state.x + step
    if x == state.b + 1:
        return WalkerState(state.a, state.b + 1, 0), True
    if x == -state.a - 1:
        return WalkerState(state.a + 1, state.b, 0), True
    return WalkerState(state.a, state.b, x), False


def _evolve(dist: Dict[WalkerState, Fraction], bias: Bias) -> Dict[WalkerState, Fraction]:
    new_dist: Dict[WalkerState, Fraction] = defaultdict(Fraction)
    for state, mass in dist.items():
        for step, prob in ((1, bias.p_right), (-1, bias.p_left)):
            target, _ = _toss(state, step)
            new_dist[target] += mass * prob
    return dict(new_dist)


INITIAL_WALKER = WalkerState(0, 0, 0)


def walker_distribution(N: int, bias: Bias = FAIR, cap: Optional[int] = None) -> Dict[WalkerState, Fraction]:
    """Přesné rozdělení přes WalkerState po N hodech."""
    _check_ntoss_cap(N, cap)
    dist = {INITIAL_WALKER: Fraction(1)}
    for _ in range(N):
        dist = _evolve(dist, bias)
    return dist


def ntoss_distribution(N: int, bias: Bias = FAIR, cap: Optional[int] = None) -> StateDistribution[int]:
    """
    Rozdělení počtu obsazených míst po přesně N hodech.

    Usazení a nové vypuštění částice nespotřebuje hod.

    Raises:
        ValueError: Pokud N < 0 nebo N > cap
    """
    dist = walker_distribution(N, bias, cap)
    by_count: Dict[int, Fraction] = defaultdict(Fraction)
    for state, mass in dist.items():
        by_count[state.occupied] += mass
    return StateDistribution(dict(by_count))


@dataclass(frozen=True)
class SettlementAccumulation:
    """Nasčítaná pravděpodobnost prvního dosažení n míst, rozdělená podle k."""

    n: int
    tosses: int
    settled: Dict[int, Fraction]
    unsettled: Fraction

    def brackets(self, exact: StateDistribution[int]) -> bool:
        """0 <= P(n,k) - settled[k] <= unsettled pro všechna k."""
        return all(
            0 <= exact[k] - self.settled.get(k, Fraction(0)) <= self.unsettled
            for k in range(self.n)
        )


def settlement_distribution(n: int, max_tosses: int, bias: Bias = FAIR) -> SettlementAccumulation:
    """
    Sčítá pravděpodobnost usazení, které vytvoří n-té obsazené místo.

    Chodci, kteří už n míst mají, se dál nevyvíjejí. Zbylá (neusazená) hmota
    shora omezuje rozdíl od P(n,k).

    Raises:
        ValueError: Pokud n < 1 nebo max_tosses < 0
    """
    if n < 1:
        raise ValueError(f"settlement_distribution vyžaduje n >= 1: {n}")
    if max_tosses < 0:
        raise ValueError(f"max_tosses musí být nezáporné: {max_tosses}")
    if n == 1:
        return SettlementAccumulation(1, 0, {0: Fraction(1)}, Fraction(0))

    settled: Dict[int, Fraction] = defaultdict(Fraction)
    live = {INITIAL_WALKER: Fraction(1)}
    for _ in range(max_tosses):
        live = _evolve(live, bias)
        for state in [s for s in live if s.occupied == n]:
            settled[state.b] += live.pop(state)
        if not live:
            break
    unsettled = sum(live.values(), Fraction(0))
    return SettlementAccumulation(n, max_tosses, dict(sorted(settled.items())), unsettled)


# ---- Orientace rho ----

@dataclass(frozen=True)
class OrientationReport:
    """Které rho (p/q nebo q/p) dává q-Eulerovu předpověď pro P(n,k)."""

    n: int
    bias: Bias
    p_over_q_matches: bool
    q_over_p_matches: bool

    @property
    def resolved(self) -> str:
        if self.p_over_q_matches and self.q_over_p_matches:
            return "both"
        if self.p_over_q_matches:
            return "p/q"
        if self.q_over_p_matches:
            return "q/p"
        return "none"


def q_eulerian_prediction(n: int, rho: RationalLike) -> StateDistribution[int]:
    """<n,k>^maj(rho) / [n]!(rho) jako rozdělení přes k."""
    row = q_eulerian_row(n)
    norm = q_factorial(n, rho)
    return StateDistribution({k: value / norm for k, value in enumerate(row.evaluate(rho))})


def resolve_rho_orientation(n: int, bias: Bias) -> OrientationReport:
    """
    Porovná exact_distribution_biased s q-Eulerovou předpovědí pro obě orientace rho.

    Raises:
        ValueError: Pokud n není v 1..9
    """
    if not 1 <= n <= MAX_BRUTE_N:
        raise ValueError(f"resolve_rho_orientation vyžaduje 1 <= n <= {MAX_BRUTE_N}: {n}")
    exact = exact_distribution_biased(n, bias)
    rho = bias.rho
    return OrientationReport(
        n=n,
        bias=bias,
        p_over_q_matches=exact == q_eulerian_prediction(n, rho),
        q_over_p_matches=exact == q_eulerian_prediction(n, 1 / rho),
    )
