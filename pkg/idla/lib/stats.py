"""
Porovnání empirických výsledků Monte Carlo s přesným rozdělením.

Jediný modul s plovoucí čárkou (numpy / scipy).
"""

from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.stats import norm

# Minimální očekávaný počet v buňce chi-kvadrát testu
MIN_EXPECTED = 5.0
DEFAULT_ALPHA = 1e-3


class FitReport(BaseModel):
    """Výsledek porovnání počtů s přesným rozdělením."""

    sse: float = Field(..., ge=0)
    chi_square_statistic: float = Field(..., ge=0)
    degrees_of_freedom: int = Field(..., ge=0)
    max_abs_deviation: float = Field(..., ge=0)
    per_cell_z_scores: List[float]
    pooled_cells: List[List[int]] = Field(default_factory=list, description="Indexy původních buněk v každé skupině")
    threshold: float
    passes: bool


def _as_float_array(values: Sequence) -> np.ndarray:
    return np.array([float(v) for v in values], dtype=np.float64)


def sse(empirical: Sequence, exact: Sequence) -> float:
    """
    sum_k (empirical_k - exact_k)^2.

    Raises:
        ValueError: Pokud se délky liší
    """
    if len(empirical) != len(exact):
        raise ValueError(f"Délky se liší: empirical={len(empirical)}, exact={len(exact)}")
    diff = _as_float_array(empirical) - _as_float_array(exact)
    return float(np.dot(diff, diff))


def pool_cells(expected: Sequence[float], min_expected: float = MIN_EXPECTED) -> List[List[int]]:
    """
    Sloučí buňky s očekávaným počtem < min_expected směrem ke středu.

    Střed je buňka s největším očekáváním. Skupina vlevo od středu se slučuje
    s pravým sousedem, vpravo s levým; samotná středová skupina s větším sousedem.

    Returns:
        Seznam skupin (indexy původních buněk), v pořadí zleva doprava
    """
    values = _as_float_array(expected)
    if values.size == 0:
        return []
    groups: List[List[int]] = [[i] for i in range(values.size)]
    center = int(np.argmax(values))

    def mass(group: List[int]) -> float:
        return float(values[group].sum())

    while len(groups) > 1:
        small = [g for g, group in enumerate(groups) if mass(group) < min_expected]
        if not small:
            break
        g = small[0]
        center_group = next(i for i, group in enumerate(groups) if center in group)
        if g < center_group:
            target = g + 1
        elif g > center_group:
            target = g - 1
        elif g == 0:
            target = 1
        elif g == len(groups) - 1:
            target = g - 1
        else:
            target = g - 1 if mass(groups[g - 1]) >= mass(groups[g + 1]) else g + 1
        lo, hi = sorted((g, target))
        groups[lo:hi + 1] = [groups[lo] + groups[hi]]
    return groups


def wilson_hilferty_quantile(dof: int, alpha: float = DEFAULT_ALPHA) -> float:
    """
    Horní alpha-kvantil chi-kvadrát rozdělení přes kubickou normální aproximaci.

    Raises:
        ValueError: Pokud dof < 1 nebo alpha mimo (0, 1)
    """
    if dof < 1:
        raise ValueError(f"dof musí být >= 1: {dof}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha musí ležet v (0, 1): {alpha}")
    z = float(norm.ppf(1 - alpha))
    c = 2.0 / (9.0 * dof)
    return dof * (1.0 - c + z * np.sqrt(c)) ** 3


def binomial_band(p: float, trials: int, sigmas: float = 5.0) -> float:
    """sigmas * sqrt(p(1-p)/trials)."""
    if trials < 1:
        raise ValueError(f"trials musí být >= 1: {trials}")
    p = float(p)
    return sigmas * float(np.sqrt(p * (1.0 - p) / trials))


def cells_within_band(counts: Sequence[int], exact: Sequence, trials: int,
                      sigmas: float = 5.0) -> List[Tuple[int, bool]]:
    """(k, |empirical_k - p_k| <= band(p_k)) pro každou buňku."""
    if len(counts) != len(exact):
        raise ValueError(f"Délky se liší: counts={len(counts)}, exact={len(exact)}")
    result = []
    for k, (count, p) in enumerate(zip(counts, exact)):
        deviation = abs(count / trials - float(p))
        result.append((k, deviation <= binomial_band(float(p), trials, sigmas)))
    return result


def chi_square(counts: Sequence[int], exact: Sequence, trials: int,
               alpha: float = DEFAULT_ALPHA) -> FitReport:
    """
    Pearsonův chi-kvadrát po sloučení malých buněk a z-skóre po buňkách.

    Buňky s nulovou přesnou pravděpodobností se do testu nezapočítávají.

    Raises:
        ValueError: Pokud trials == 0, nesedí délky nebo součet počtů
    """
    if trials <= 0:
        raise ValueError(f"trials musí být > 0: {trials}")
    if len(counts) != len(exact):
        raise ValueError(f"Délky se liší: counts={len(counts)}, exact={len(exact)}")
    observed = np.array(counts, dtype=np.float64)
    if int(sum(counts)) != trials:
        raise ValueError(f"Součet počtů {int(sum(counts))} != trials {trials}")
    probs = _as_float_array(exact)

    expected = probs * trials
    with np.errstate(divide='ignore', invalid='ignore'):
        z_scores = np.where(
            (probs > 0) & (probs < 1),
            (observed - expected) / np.sqrt(expected * (1.0 - probs)),
            0.0,
        )

    support = [i for i in range(len(probs)) if probs[i] > 0]
    groups = [[support[i] for i in group] for group in pool_cells(expected[support])]
    statistic = 0.0
    for group in groups:
        obs = float(observed[group].sum())
        exp = float(expected[group].sum())
        statistic += (obs - exp) ** 2 / exp
    outside = float(observed[[i for i in range(len(probs)) if probs[i] == 0]].sum())
    if outside > 0:
        statistic = float('inf')

    dof = max(len(groups) - 1, 0)
    threshold = wilson_hilferty_quantile(dof, alpha) if dof >= 1 else 0.0
    frequencies = observed / trials
    return FitReport(
        sse=sse(frequencies, probs),
        chi_square_statistic=statistic,
        degrees_of_freedom=dof,
        max_abs_deviation=float(np.max(np.abs(frequencies - probs))),
        per_cell_z_scores=[float(z) for z in z_scores],
        pooled_cells=groups,
        threshold=threshold,
        passes=statistic <= threshold,
    )
