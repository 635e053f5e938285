"""
cli/verify - Sady invariantů pro příkaz `verify`.

Každá sada vrací seznam CheckResult; neúspěšná kontrola nese první protipříklad.
"""

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional

# Import idla library
sys.path.insert(0, str(Path(__file__).parent.parent))
from idla.config import Settings, settings as default_settings
from idla.lib import (
    FAIR, Bias, SimConfig, SplitMix64, TruncatedSeries,
    binomial, bivariate_polynomial, chi_square, cells_within_band, closed_form_delta_E, closed_form_E,
    corollary_weighted_sum, delta_series_mismatches, escape_time, eulerian_polynomial, eulerian_row,
    eulerian_row_brute, exact_distribution, exact_distribution_biased, expected_total_tosses,
    gambler_win_prob, mixed_partial_weighted_sum, ntoss_distribution, poly_eval, q_eulerian_prediction,
    q_eulerian_row, q_factorial, resolve_rho_orientation, run_single_game, run_trials,
    series_div, series_exp_linear, settlement_distribution, simulate_chunk, univariate_egf_check
)
from idla.logger import get_logger

logger = get_logger(__name__)

# Vytištěné pole: počet obsazených míst po N hodech, škálováno 2^(N-1), sloupce od n=2
PUBLISHED_NTOSS_SCALED: Dict[int, Dict[int, int]] = {
    1: {2: 1},
    2: {2: 1, 3: 1},
    3: {2: 1, 3: 3},
    4: {2: 1, 3: 4, 4: 3},
    5: {2: 1, 3: 9, 4: 6},
    6: {2: 1, 3: 10, 4: 18, 5: 3},
    7: {2: 1, 3: 21, 4: 32, 5: 10},
}

# Publikované Monte Carlo průměry počtu hodů
PUBLISHED_MEAN_TOSSES: Dict[int, float] = {
    3: 3.00, 4: 6.66, 5: 12.49, 6: 20.98, 7: 32.64, 8: 47.96,
    9: 67.54, 10: 91.68, 15: 300.24, 20: 699.79,
}

PUBLISHED_EULERIAN_ROWS = {
    1: (1,), 2: (1, 1), 3: (1, 4, 1), 4: (1, 11, 11, 1),
    5: (1, 26, 66, 26, 1), 6: (1, 57, 302, 302, 57, 1),
}

# (a, b) -> a*b pro stavy s(5, k)
ESCAPE_CHART_N5 = {(1, 5): 5, (2, 4): 8, (3, 3): 9, (4, 2): 8, (5, 1): 5}

BIASES = (Fraction(1, 2), Fraction(2, 3), Fraction(1, 4))
RHO_POINTS = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 5))
EGF_POINTS = (Fraction(0), Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3, 4))
BIVARIATE_POINTS = (
    (Fraction(1, 2), Fraction(3)), (Fraction(-2), Fraction(5, 7)), (Fraction(7), Fraction(-1, 3)),
    (Fraction(2, 9), Fraction(4, 5)), (Fraction(-3, 4), Fraction(-6)), (Fraction(11), Fraction(2)),
    (Fraction(5, 3), Fraction(1, 8)), (Fraction(-1, 2), Fraction(9, 4)), (Fraction(13, 6), Fraction(-7, 2)),
    (Fraction(3), Fraction(10, 3)),
)
MEAN_TARGETS = {10: Fraction(275, 3), 15: Fraction(300), 20: Fraction(700)}


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    passed: bool
    detail: str = ""


def first_failure(items, predicate: Callable, describe: Callable) -> Optional[str]:
    """Popis prvního prvku, který nesplní predikát, jinak None."""
    for item in items:
        if not predicate(item):
            return describe(item)
    return None


def _result(suite: str, check: str, failure: Optional[str], ok_detail: str = "") -> CheckResult:
    if failure is None:
        return CheckResult(suite, check, True, ok_detail)
    return CheckResult(suite, check, False, failure)


# ---- algebra ----

def suite_algebra(cfg: Settings) -> Iterator[CheckResult]:
    s = "algebra"
    yield _result(s, "rational_normalization", first_failure(
        [(4, 6), (-3, -9), (10, -4), (0, 5)],
        lambda nd: (lambda r: math.gcd(r.numerator, r.denominator) == 1 and r.denominator > 0)(Fraction(*nd)),
        lambda nd: f"Fraction{nd} není v základním tvaru",
    ))

    order = 16
    series = [
        series_exp_linear(Fraction(1, 3), order),
        TruncatedSeries.from_coefficients([1, -2, 5], order),
        TruncatedSeries.from_coefficients([Fraction(1, 2), 0, 3, Fraction(-7, 4)], order),
    ]
    a, b, c = series
    laws = {
        "commutative": (a * b, b * a),
        "associative": ((a * b) * c, a * (b * c)),
        "distributive": (a * (b + c), a * b + a * c),
        "division": (series_div(a * b, b), a),
    }
    yield _result(s, "series_ring_laws", first_failure(
        laws.items(), lambda kv: kv[1][0] == kv[1][1], lambda kv: f"zákon {kv[0]} neplatí na řádu {order}",
    ))
    yield _result(s, "exp_inverse", first_failure(
        [Fraction(1), Fraction(-2, 3), Fraction(5, 2)],
        lambda x: series_exp_linear(x, order) * series_exp_linear(-x, order) == TruncatedSeries.one(order),
        lambda x: f"exp({x}z)*exp({-x}z) != 1",
    ))
    yield _result(s, "binomial_row_sums", first_failure(
        range(31), lambda n: sum(binomial(n, k) for k in range(n + 1)) == 2 ** n,
        lambda n: f"sum_k C({n},k) != 2^{n}",
    ))


# ---- eulerian ----

def suite_eulerian(cfg: Settings) -> Iterator[CheckResult]:
    s = "eulerian"
    yield _result(s, "recurrence_equals_brute_force", first_failure(
        range(1, 9), lambda n: eulerian_row(n) == eulerian_row_brute(n),
        lambda n: f"n={n}: {eulerian_row(n).entries} != {eulerian_row_brute(n).entries}",
    ))
    yield _result(s, "symmetry_and_factorial_sum", first_failure(
        range(1, 26),
        lambda n: eulerian_row(n).is_symmetric() and eulerian_row(n).total() == math.factorial(n),
        lambda n: f"n={n}: řádek není symetrický nebo součet != {n}!",
    ))
    yield _result(s, "published_triangle", first_failure(
        PUBLISHED_EULERIAN_ROWS.items(), lambda kv: eulerian_row(kv[0]).entries == kv[1],
        lambda kv: f"n={kv[0]}: {eulerian_row(kv[0]).entries} != {kv[1]}",
    ))

    def homogeneous(point) -> bool:
        u, t = point
        return all(
            bivariate_polynomial(n).evaluate(u, t) == t ** (n + 1) * poly_eval(eulerian_polynomial(n), u / t)
            for n in range(1, 9)
        )

    yield _result(s, "bivariate_homogeneity", first_failure(
        BIVARIATE_POINTS, homogeneous, lambda p: f"A_n(s,t) != t^(n+1) A_n(s/t) v bodě {p}",
    ))
    yield _result(s, "q_eulerian_sums_to_q_factorial", first_failure(
        [(n, rho) for n in range(1, 8) for rho in RHO_POINTS],
        lambda nr: sum(q_eulerian_row(nr[0]).evaluate(nr[1]), Fraction(0)) == q_factorial(*nr),
        lambda nr: f"n={nr[0]}, rho={nr[1]}",
    ))
    yield _result(s, "q_eulerian_at_one", first_failure(
        range(1, 8),
        lambda n: q_eulerian_row(n).evaluate(1) == [Fraction(e) for e in eulerian_row(n)],
        lambda n: f"n={n}",
    ))


# ---- genfun ----

def suite_genfun(cfg: Settings) -> Iterator[CheckResult]:
    s = "genfun"
    mismatches = delta_series_mismatches(30)
    yield _result(s, "delta_series_order_30",
                  None if not mismatches else "z^{0} [{1}]: {2} != {3}".format(*mismatches[0]))
    yield _result(s, "univariate_egf", first_failure(
        EGF_POINTS, lambda x: univariate_egf_check(x, 10), lambda x: f"x={x}, order=10",
    ))
    yield _result(s, "mixed_partial_n6", first_failure(
        [6], lambda n: mixed_partial_weighted_sum(n) == 1020,
        lambda n: f"{mixed_partial_weighted_sum(n)} != 1020",
    ))
    yield _result(s, "mixed_partial_equals_scaled_corollary", first_failure(
        range(3, 13),
        lambda n: mixed_partial_weighted_sum(n) == math.factorial(n - 1) * corollary_weighted_sum(n),
        lambda n: f"n={n}",
    ))
    yield _result(s, "corollary_equals_closed_delta", first_failure(
        range(3, 26), lambda n: corollary_weighted_sum(n) == closed_form_delta_E(n),
        lambda n: f"n={n}: {corollary_weighted_sum(n)} != {closed_form_delta_E(n)}",
    ))
    yield _result(s, "closed_form_differences", first_failure(
        range(2, 101), lambda n: closed_form_E(n) - closed_form_E(n - 1) == closed_form_delta_E(n),
        lambda n: f"n={n}",
    ))


# ---- chain ----

def suite_chain(cfg: Settings) -> Iterator[CheckResult]:
    s = "chain"
    yield _result(s, "distribution_is_eulerian", first_failure(
        range(1, 13),
        lambda n: [p * math.factorial(n) for p in exact_distribution(n).probabilities(range(n))]
        == list(eulerian_row(n)),
        lambda n: f"n={n}: P(n,k)*n! != <n,k>",
    ))
    yield _result(s, "escape_time_is_product", first_failure(
        [(a, b) for a in range(1, 13) for b in range(1, 13)],
        lambda ab: escape_time(*ab) == ab[0] * ab[1],
        lambda ab: f"escape_time{ab} = {escape_time(*ab)}",
    ))
    yield _result(s, "escape_chart_n5", first_failure(
        ESCAPE_CHART_N5.items(), lambda kv: escape_time(*kv[0]) == kv[1], lambda kv: f"{kv[0]}",
    ))
    yield _result(s, "gambler_fair", first_failure(
        [(k, l) for k in range(1, 9) for l in range(1, 9)],
        lambda kl: gambler_win_prob(*kl) == Fraction(kl[0], kl[0] + kl[1]),
        lambda kl: f"gambler_win_prob{kl} = {gambler_win_prob(*kl)}",
    ))

    totals = {n: expected_total_tosses(n) for n in range(1, 31)}
    yield _result(s, "expected_tosses_closed_form", first_failure(
        range(2, 31), lambda n: totals[n] == closed_form_E(n),
        lambda n: f"n={n}: {totals[n]} != {closed_form_E(n)}",
    ))
    yield _result(s, "expected_tosses_small", first_failure(
        [(1, 0), (2, 1)], lambda nv: totals[nv[0]] == nv[1], lambda nv: f"E_{nv[0]} = {totals[nv[0]]}",
    ))
    yield _result(s, "delta_E_6", None if totals[6] - totals[5] == Fraction(17, 2)
                  else f"E_6 - E_5 = {totals[6] - totals[5]}")
    yield _result(s, "published_mean_tosses_within_1pct", first_failure(
        PUBLISHED_MEAN_TOSSES.items(),
        lambda kv: abs(kv[1] - float(closed_form_E(kv[0]))) <= 0.01 * float(closed_form_E(kv[0])),
        lambda kv: f"n={kv[0]}: {kv[1]} vs {float(closed_form_E(kv[0]))}",
    ))

    ntoss = {N: ntoss_distribution(N, cap=max(16, N)) for N in range(0, 17)}
    yield _result(s, "ntoss_published_array", first_failure(
        PUBLISHED_NTOSS_SCALED.items(),
        lambda kv: {n: p * 2 ** (kv[0] - 1) for n, p in ntoss[kv[0]].items()} == kv[1],
        lambda kv: f"N={kv[0]}: {dict(ntoss[kv[0]].items())}",
    ))
    yield _result(s, "ntoss_denominators", first_failure(
        range(1, 17), lambda N: all((2 ** (N - 1)) % p.denominator == 0 for _, p in ntoss[N].items()),
        lambda N: f"N={N}",
    ))

    def first_nonzero(n: int) -> Optional[int]:
        return next((N for N in range(17) if ntoss[N][n] > 0), None)

    yield _result(s, "ntoss_first_nonzero", first_failure(
        range(2, 9), lambda n: first_nonzero(n) == math.ceil(n / 2) * (n // 2),
        lambda n: f"n={n}: první N = {first_nonzero(n)}",
    ))

    def brackets(n: int) -> bool:
        return settlement_distribution(n, 40).brackets(exact_distribution(n))

    yield _result(s, "settlement_brackets_exact", first_failure(
        range(1, 7), brackets, lambda n: f"n={n}",
    ))


# ---- biased ----

def suite_biased(cfg: Settings) -> Iterator[CheckResult]:
    s = "biased"
    yield _result(s, "fair_bias_equals_fair", first_failure(
        range(1, 11), lambda n: exact_distribution_biased(n, FAIR) == exact_distribution(n),
        lambda n: f"n={n}",
    ))
    yield _result(s, "sums_to_one", first_failure(
        [(n, p) for n in range(1, 9) for p in BIASES],
        lambda np_: exact_distribution_biased(np_[0], Bias(np_[1])).total() == 1,
        lambda np_: f"n={np_[0]}, p={np_[1]}",
    ))
    yield _result(s, "q_eulerian_at_p_over_q", first_failure(
        [(n, p) for n in range(1, 8) for p in BIASES],
        lambda np_: exact_distribution_biased(np_[0], Bias(np_[1])) == q_eulerian_prediction(np_[0], Bias(np_[1]).rho),
        lambda np_: f"n={np_[0]}, p_right={np_[1]}",
    ))
    reports = [resolve_rho_orientation(5, Bias(p)) for p in BIASES if p != Fraction(1, 2)]
    yield _result(s, "rho_orientation", first_failure(
        reports, lambda r: r.resolved == "p/q", lambda r: f"p_right={r.bias.p_right}: {r.resolved}",
    ), ok_detail="rho = p_right/p_left")
    yield _result(s, "gambler_biased_example", None if gambler_win_prob(2, 1, Bias(Fraction(2, 3))) == Fraction(6, 7)
                  else f"{gambler_win_prob(2, 1, Bias(Fraction(2, 3)))} != 6/7")


# ---- montecarlo ----

def suite_montecarlo(cfg: Settings) -> Iterator[CheckResult]:
    s = "montecarlo"
    trials = cfg.verify_mc_trials
    seeds = cfg.verify_mc_seeds
    workers = cfg.default_workers

    yield _result(s, "vectorized_equals_scalar", first_failure(
        [(n, seed) for n in (1, 2, 5) for seed in seeds[:1]],
        lambda ns: _matches_scalar(ns[0], ns[1]),
        lambda ns: f"n={ns[0]}, seed={ns[1]}",
    ))

    config = SimConfig(n_particles=5, trials=3000, master_seed=seeds[0], worker_count=1, chunk_size=512)
    parallel = config.model_copy(update={'worker_count': 4})
    yield _result(s, "deterministic_across_workers",
                  None if run_trials(config) == run_trials(parallel) else "souhrn se liší pro 1 a 4 workery")

    for n in range(3, 8):
        exact = exact_distribution(n).probabilities(range(n))
        passes = 0
        band_failure: Optional[str] = None
        for seed in seeds:
            summary = run_trials(SimConfig(n_particles=n, trials=trials, master_seed=seed,
                                           worker_count=workers, chunk_size=cfg.chunk_size))
            for k, ok in cells_within_band(summary.counts_by_k, exact, trials):
                if not ok and band_failure is None:
                    band_failure = f"seed={seed}, k={k}: {summary.counts_by_k[k]}/{trials} vs {exact[k]}"
            if chi_square(summary.counts_by_k, exact, trials).passes:
                passes += 1
        yield _result(s, f"band_5sigma_n{n}", band_failure)
        yield _result(s, f"chi_square_n{n}",
                      None if passes >= 2 else f"prošlo {passes}/{len(seeds)} seedů",
                      ok_detail=f"{passes}/{len(seeds)}")

    for n, target in MEAN_TARGETS.items():
        summary = run_trials(SimConfig(n_particles=n, trials=trials, master_seed=seeds[0],
                                       worker_count=workers, chunk_size=cfg.chunk_size))
        gap = abs(summary.mean_tosses - float(target))
        yield _result(s, f"mean_tosses_n{n}",
                      None if gap <= 3 * summary.std_error_tosses
                      else f"{summary.mean_tosses:.3f} vs {float(target):.3f} (SE {summary.std_error_tosses:.3f})",
                      ok_detail=f"{summary.mean_tosses:.3f}")


def _matches_scalar(n: int, seed: int, trials: int = 64) -> bool:
    chunk = simulate_chunk(n, FAIR, seed, 0, trials)
    counts = [0] * n
    total = 0
    for t in range(trials):
        game = run_single_game(n, FAIR, SplitMix64.for_trial(seed, t))
        counts[game.final_k] += 1
        total += game.total_tosses
    return list(chunk.counts) == counts and chunk.total_tosses == total


SUITES: Dict[str, Callable[[Settings], Iterator[CheckResult]]] = {
    "algebra": suite_algebra,
    "eulerian": suite_eulerian,
    "genfun": suite_genfun,
    "chain": suite_chain,
    "biased": suite_biased,
    "montecarlo": suite_montecarlo,
}


def run_suites(suite: str = "all", cfg: Optional[Settings] = None) -> List[CheckResult]:
    """
    Spustí jednu sadu nebo všechny ("all").

    Raises:
        ValueError: Pokud sada neexistuje
    """
    cfg = cfg or default_settings
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"Neznámá sada: {suite} (povoleno: all, {', '.join(SUITES)})")

    results: List[CheckResult] = []
    for name in names:
        suite_results = list(SUITES[name](cfg))
        failed = [r for r in suite_results if not r.passed]
        logger.info("Sada dokončena", suite=name, checks=len(suite_results), failed=len(failed))
        results.extend(suite_results)
    return results
