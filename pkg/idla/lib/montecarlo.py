"""
Monte Carlo simulace IDLA hry s reprodukovatelným SplitMix64 generátorem.

Trial t s master seedem m používá vlastní podproud (seed = (t+1)-tý výstup
SplitMix64 z m). Generátor je čítačový: j-tý hod trialu je mix64(seed + j*GAMMA),
takže vektorové jádro (numpy) i skalární cesta dávají stejné hry. Trialy se
dělí na chunky pevné velikosti; výsledek nezávisí na počtu workerů.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config import settings
from ..logger import get_logger
from .chain import FAIR, Bias

logger = get_logger(__name__)

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

_GAMMA_U64 = np.uint64(GAMMA)
_MIX1_U64 = np.uint64(MIX1)
_MIX2_U64 = np.uint64(MIX2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)

T = TypeVar('T')


# ---- Generátor ----

def mix64(z: int) -> int:
    """SplitMix64 finalizer nad Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer nad polem uint64 (násobení přetéká modulo 2^64)."""
    z = (z ^ (z >> _S30)) * _MIX1_U64
    z = (z ^ (z >> _S27)) * _MIX2_U64
    return z ^ (z >> _S31)


def derive_substream_seed(master_seed: int, trial_index: int) -> int:
    """(trial_index+1)-tý výstup SplitMix64 inicializovaného master_seed."""
    if not 0 <= master_seed <= MASK64:
        raise ValueError(f"master_seed musí být 64bitové unsigned číslo: {master_seed}")
    if trial_index < 0:
        raise ValueError(f"trial_index musí být nezáporný: {trial_index}")
    return mix64(master_seed + (trial_index + 1) * GAMMA)


def coin_threshold(bias: Bias) -> int:
    """floor(p_right * 2^64); hod je doprava, pokud výstup < práh."""
    p = bias.p_right
    return (p.numerator << 64) // p.denominator


class SplitMix64:
    """Sekvenční SplitMix64; výstup i je mix64(seed + i*GAMMA)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    @classmethod
    def for_trial(cls, master_seed: int, trial_index: int) -> "SplitMix64":
        return cls(derive_substream_seed(master_seed, trial_index))

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)


# ---- Typy ----

class SimConfig(BaseModel):
    """Parametry dávky trialů. Výsledek nezávisí na worker_count ani chunk_size."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_particles: int = Field(..., ge=1)
    trials: int = Field(..., ge=1)
    bias: Bias = Field(default=FAIR)
    master_seed: int = Field(..., ge=0, le=MASK64)
    worker_count: int = Field(default_factory=lambda: settings.default_workers, ge=1)
    chunk_size: int = Field(default_factory=lambda: settings.chunk_size, ge=1)

    @field_validator('bias', mode='before')
    @classmethod
    def parse_bias(cls, v):
        if isinstance(v, Bias):
            return v
        if isinstance(v, str):
            return Bias.parse(v)
        return Bias(v)


@dataclass(frozen=True)
class GameResult:
    final_k: int
    total_tosses: int
    min_pos: int
    max_pos: int


class TrialBatchSummary(BaseModel):
    """Souhrn dávky trialů; momenty z přesných celočíselných součtů."""

    n_particles: int
    trials: int
    counts_by_k: List[int]
    total_tosses: int
    total_squared_tosses: int
    mean_tosses: float
    variance_tosses: float
    std_error_tosses: float
    min_tosses: int
    max_tosses: int
    min_position: int
    max_position: int

    def frequencies(self) -> List[float]:
        return [count / self.trials for count in self.counts_by_k]


# ---- Skalární cesta ----

def run_single_game(n: int, bias: Bias, stream: SplitMix64) -> GameResult:
    """
    Odehraje jednu hru s n částicemi.

    První částice obsadí počátek bez hodu; každá další chodí z 0, dokud
    nenarazí na volné místo. Obsazená místa tvoří interval [-a, b].

    Raises:
        ValueError: Pokud n < 1
    """
    if n < 1:
        raise ValueError(f"run_single_game vyžaduje n >= 1: {n}")
    threshold = coin_threshold(bias)
    a = b = 0
    tosses = 0
    for _ in range(n - 1):
        x = 0
        while True:
            x += 1 if stream.next_u64() < threshold else -1
            tosses += 1
            if x == b + 1:
                b += 1
                break
            if x == -a - 1:
                a += 1
                break
            assert -a <= x <= b, f"chodec mimo obsazený interval: x={x}, interval=[{-a}, {b}]"
    assert a + b + 1 == n
    return GameResult(final_k=b, total_tosses=tosses, min_pos=-a, max_pos=b)


def run_ntoss_game(N: int, bias: Bias, stream: SplitMix64) -> int:
    """Počet obsazených míst po přesně N hodech (usazení hod nespotřebuje)."""
    threshold = coin_threshold(bias)
    a = b = x = 0
    for _ in range(N):
        x += 1 if stream.next_u64() < threshold else -1
        if x == b + 1:
            b, x = b + 1, 0
        elif x == -a - 1:
            a, x = a + 1, 0
    return a + b + 1


# ---- Vektorové jádro ----

def _trial_seeds(master_seed: int, start: int, stop: int) -> np.ndarray:
    index = np.arange(start, stop, dtype=np.uint64)
    return mix64_array(np.uint64(master_seed) + (index + np.uint64(1)) * _GAMMA_U64)


@dataclass
class ChunkResult:
    """Agregát jednoho chunku; součty jsou přesné Python int."""

    counts: np.ndarray
    total_tosses: int
    total_squared_tosses: int
    min_tosses: int
    max_tosses: int
    min_position: int
    max_position: int


def simulate_chunk(n: int, bias: Bias, master_seed: int, start: int, stop: int) -> ChunkResult:
    """
    Odehraje trialy start..stop-1 najednou.

    Každá iterace je jeden hod všech ještě běžících her; dohrané hry se
    z aktivních polí vyřazují. Hra t je shodná s run_single_game na
    SplitMix64.for_trial(master_seed, t).
    """
    if n < 1:
        raise ValueError(f"simulate_chunk vyžaduje n >= 1: {n}")
    if not 0 <= start < stop:
        raise ValueError(f"Nevalidní rozsah trialů: {start}..{stop}")
    size = stop - start
    final_k = np.zeros(size, dtype=np.int64)
    tosses_out = np.zeros(size, dtype=np.int64)

    if n > 1:
        threshold = np.uint64(coin_threshold(bias))
        counter = _trial_seeds(master_seed, start, stop)
        idx = np.arange(size)
        a = np.zeros(size, dtype=np.int64)
        b = np.zeros(size, dtype=np.int64)
        x = np.zeros(size, dtype=np.int64)
        tosses = np.zeros(size, dtype=np.int64)

        while idx.size:
            counter = counter + _GAMMA_U64
            right = mix64_array(counter) < threshold
            x += np.where(right, 1, -1)
            tosses += 1

            settle_right = x == b + 1
            settle_left = x == -a - 1
            b += settle_right
            a += settle_left
            x[settle_right | settle_left] = 0

            done = a + b + 1 == n
            if done.any():
                final_k[idx[done]] = b[done]
                tosses_out[idx[done]] = tosses[done]
                keep = ~done
                idx, counter, a, b, x, tosses = (
                    idx[keep], counter[keep], a[keep], b[keep], x[keep], tosses[keep]
                )

    counts = np.bincount(final_k, minlength=n).astype(np.int64)
    exact = tosses_out.astype(object)
    return ChunkResult(
        counts=counts,
        total_tosses=int(exact.sum()),
        total_squared_tosses=int((exact * exact).sum()),
        min_tosses=int(tosses_out.min()),
        max_tosses=int(tosses_out.max()),
        min_position=int(-(n - 1 - final_k).max()),
        max_position=int(final_k.max()),
    )


def simulate_ntoss_chunk(N: int, bias: Bias, master_seed: int, start: int, stop: int) -> np.ndarray:
    """Počty obsazených míst po N hodech pro trialy start..stop-1."""
    size = stop - start
    threshold = np.uint64(coin_threshold(bias))
    counter = _trial_seeds(master_seed, start, stop)
    a = np.zeros(size, dtype=np.int64)
    b = np.zeros(size, dtype=np.int64)
    x = np.zeros(size, dtype=np.int64)
    for _ in range(N):
        counter = counter + _GAMMA_U64
        x += np.where(mix64_array(counter) < threshold, 1, -1)
        settle_right = x == b + 1
        settle_left = x == -a - 1
        b += settle_right
        a += settle_left
        x[settle_right | settle_left] = 0
    return a + b + 1


# ---- Dávky ----

def chunk_bounds(trials: int, chunk_size: int) -> List[Tuple[int, int]]:
    return [(start, min(start + chunk_size, trials)) for start in range(0, trials, chunk_size)]


def _dispatch(work: Callable[[Tuple[int, int]], T], chunks: List[Tuple[int, int]], workers: int) -> List[T]:
    """Spustí chunky na ThreadPoolExecutor; výsledky v pořadí chunků."""
    if workers == 1:
        return [work(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(work, chunks))


def summarize_chunks(n: int, trials: int, chunks: List[ChunkResult]) -> TrialBatchSummary:
    counts = np.zeros(n, dtype=np.int64)
    for chunk in chunks:
        counts += chunk.counts
    total = sum(chunk.total_tosses for chunk in chunks)
    total_sq = sum(chunk.total_squared_tosses for chunk in chunks)

    mean = Fraction(total, trials)
    variance = Fraction(total_sq - total * mean, trials - 1) if trials > 1 else Fraction(0)
    return TrialBatchSummary(
        n_particles=n,
        trials=trials,
        counts_by_k=[int(c) for c in counts],
        total_tosses=total,
        total_squared_tosses=total_sq,
        mean_tosses=float(mean),
        variance_tosses=float(variance),
        std_error_tosses=math.sqrt(float(variance) / trials),
        min_tosses=min(chunk.min_tosses for chunk in chunks),
        max_tosses=max(chunk.max_tosses for chunk in chunks),
        min_position=min(chunk.min_position for chunk in chunks),
        max_position=max(chunk.max_position for chunk in chunks),
    )


def run_trials(config: SimConfig) -> TrialBatchSummary:
    """
    Odehraje config.trials her a vrátí souhrn.

    Returns:
        TrialBatchSummary: Bitově stejný pro libovolný worker_count
    """
    chunks = chunk_bounds(config.trials, config.chunk_size)
    logger.info("Monte Carlo start",
                n=config.n_particles, trials=config.trials, p_right=str(config.bias.p_right),
                workers=config.worker_count, chunks=len(chunks))
    started = time.time()

    def work(bounds: Tuple[int, int]) -> ChunkResult:
        return simulate_chunk(config.n_particles, config.bias, config.master_seed, *bounds)

    results = _dispatch(work, chunks, config.worker_count)
    summary = summarize_chunks(config.n_particles, config.trials, results)

    logger.info("Monte Carlo hotovo",
                n=config.n_particles, trials=config.trials,
                mean_tosses=summary.mean_tosses, elapsed=round(time.time() - started, 3))
    return summary


def empirical_ntoss(N: int, trials: int, bias: Bias = FAIR, master_seed: int = 0,
                    worker_count: Optional[int] = None,
                    chunk_size: Optional[int] = None) -> Dict[int, int]:
    """
    Histogram počtu obsazených míst po přesně N hodech.

    Raises:
        ValueError: Pokud N < 1, trials < 1 nebo worker_count < 1
    """
    if N < 1:
        raise ValueError(f"empirical_ntoss vyžaduje N >= 1: {N}")
    if trials < 1:
        raise ValueError(f"trials musí být >= 1: {trials}")
    if not 0 <= master_seed <= MASK64:
        raise ValueError(f"master_seed musí být 64bitové unsigned číslo: {master_seed}")
    workers = settings.default_workers if worker_count is None else worker_count
    if workers < 1:
        raise ValueError(f"worker_count musí být >= 1: {workers}")
    chunks = chunk_bounds(trials, chunk_size or settings.chunk_size)

    def work(bounds: Tuple[int, int]) -> np.ndarray:
        return np.bincount(simulate_ntoss_chunk(N, bias, master_seed, *bounds), minlength=N + 2)

    totals = np.zeros(N + 2, dtype=np.int64)
    for counts in _dispatch(work, chunks, workers):
        totals += counts
    return {n: int(c) for n, c in enumerate(totals) if c}
