"""
Knihovna idla.
"""

from .algebra import (
    Rational, Polynomial, BivariatePolynomial, TruncatedSeries,
    to_rational, parse_rational, format_rational, binomial, poly_eval,
    series_exp_linear, series_div, solve_tridiagonal
)

from .eulerian import (
    EulerianRow, Permutation, QEulerianRow,
    eulerian_row, eulerian_row_brute, eulerian_polynomial, bivariate_polynomial,
    permutations_lex, next_permutation, major_index, q_eulerian_row, q_integer, q_factorial
)

from .chain import (
    Bias, FAIR, MacroState, WalkerState, StateDistribution, SettlementAccumulation, OrientationReport,
    transition_probs, exact_distribution, exact_distribution_biased, gambler_win_prob, escape_time,
    expected_total_tosses, ntoss_distribution, walker_distribution, settlement_distribution,
    q_eulerian_prediction, resolve_rho_orientation
)

from .runtime import (
    RuntimeReport, closed_form_E, closed_form_delta_E, corollary_weighted_sum,
    mixed_partial_weighted_sum, egf_coefficients, univariate_egf_check,
    delta_series, delta_series_check, delta_series_mismatches, runtime_report, runtime_table
)

from .montecarlo import (
    SplitMix64, SimConfig, GameResult, TrialBatchSummary,
    derive_substream_seed, run_single_game, run_ntoss_game, simulate_chunk,
    run_trials, empirical_ntoss
)

from .stats import (
    FitReport, sse, chi_square, pool_cells, wilson_hilferty_quantile, binomial_band, cells_within_band
)

from .ids import new_ulid, new_run_id, is_valid_run_id, timestamp_from_run_id, run_dir

from .manifest import Manifest, create_manifest

from .envelope import build_envelope, encode, rational_cells

__all__ = [
    # Algebra
    'Rational', 'Polynomial', 'BivariatePolynomial', 'TruncatedSeries',
    'to_rational', 'parse_rational', 'format_rational', 'binomial', 'poly_eval',
    'series_exp_linear', 'series_div', 'solve_tridiagonal',
    # Eulerian
    'EulerianRow', 'Permutation', 'QEulerianRow',
    'eulerian_row', 'eulerian_row_brute', 'eulerian_polynomial', 'bivariate_polynomial',
    'permutations_lex', 'next_permutation', 'major_index', 'q_eulerian_row', 'q_integer', 'q_factorial',
    # Chain
    'Bias', 'FAIR', 'MacroState', 'WalkerState', 'StateDistribution', 'SettlementAccumulation',
    'OrientationReport', 'transition_probs', 'exact_distribution', 'exact_distribution_biased',
    'gambler_win_prob', 'escape_time', 'expected_total_tosses', 'ntoss_distribution',
    'walker_distribution', 'settlement_distribution', 'q_eulerian_prediction', 'resolve_rho_orientation',
    # Runtime
    'RuntimeReport', 'closed_form_E', 'closed_form_delta_E', 'corollary_weighted_sum',
    'mixed_partial_weighted_sum', 'egf_coefficients', 'univariate_egf_check',
    'delta_series', 'delta_series_check', 'delta_series_mismatches', 'runtime_report', 'runtime_table',
    # Monte Carlo
    'SplitMix64', 'SimConfig', 'GameResult', 'TrialBatchSummary',
    'derive_substream_seed', 'run_single_game', 'run_ntoss_game', 'simulate_chunk',
    'run_trials', 'empirical_ntoss',
    # Stats
    'FitReport', 'sse', 'chi_square', 'pool_cells', 'wilson_hilferty_quantile',
    'binomial_band', 'cells_within_band',
    # IDs
    'new_ulid', 'new_run_id', 'is_valid_run_id', 'timestamp_from_run_id', 'run_dir',
    # Manifest
    'Manifest', 'create_manifest',
    # Envelope
    'build_envelope', 'encode', 'rational_cells'
]
