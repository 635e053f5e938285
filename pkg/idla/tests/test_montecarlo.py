"""
Unit testy pro idla/lib/montecarlo.py
"""

from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from idla.lib.chain import FAIR, Bias, exact_distribution
from idla.lib.montecarlo import (
    GAMMA, SimConfig, SplitMix64, chunk_bounds, coin_threshold, derive_substream_seed, empirical_ntoss,
    mix64, mix64_array, run_ntoss_game, run_single_game, run_trials, simulate_chunk
)
from idla.lib.runtime import closed_form_E
from idla.lib.stats import cells_within_band

SEED = 20240501


class TestGenerator:
    """Testy pro generátor SplitMix64."""

    def test_reference_output(self):
        """Testuje referenční výstup."""
        # První výstup SplitMix64 se seedem 0
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF

    def test_array_matches_scalar(self):
        """Testuje shodu vektorové a skalární verze."""
        values = [0, 1, GAMMA, 2 ** 64 - 1, 123456789]
        expected = [mix64(v) for v in values]
        assert [int(v) for v in mix64_array(np.array(values, dtype=np.uint64))] == expected

    def test_substream_seed_is_stream_output(self):
        """Testuje seed podproudu."""
        stream = SplitMix64(SEED)
        outputs = [stream.next_u64() for _ in range(4)]
        assert [derive_substream_seed(SEED, t) for t in range(4)] == outputs

    def test_substream_seed_invalid(self):
        """Testuje neplatný index podproudu."""
        with pytest.raises(ValueError):
            derive_substream_seed(-1, 0)
        with pytest.raises(ValueError):
            derive_substream_seed(0, -1)

    def test_coin_threshold(self):
        """Testuje práh mince."""
        assert coin_threshold(FAIR) == 2 ** 63
        assert coin_threshold(Bias(Fraction(1, 4))) == 2 ** 62


class TestScalarGame:
    """Testy pro skalární hru."""

    def test_single_particle(self):
        """Testuje jednu částici."""
        result = run_single_game(1, FAIR, SplitMix64.for_trial(SEED, 0))
        assert (result.final_k, result.total_tosses, result.min_pos, result.max_pos) == (0, 0, 0, 0)

    def test_two_particles_take_one_toss(self):
        """Testuje, že dvě částice potřebují jeden hod."""
        for t in range(20):
            result = run_single_game(2, FAIR, SplitMix64.for_trial(SEED, t))
            assert result.total_tosses == 1
            assert result.max_pos - result.min_pos == 1

    def test_interval_length(self):
        """Testuje délku intervalu."""
        result = run_single_game(6, FAIR, SplitMix64.for_trial(SEED, 3))
        assert result.max_pos - result.min_pos + 1 == 6
        assert result.final_k == result.max_pos

    def test_invalid(self):
        """Testuje neplatné vstupy."""
        with pytest.raises(ValueError):
            run_single_game(0, FAIR, SplitMix64(1))

    def test_ntoss_one_toss(self):
        """Testuje jeden hod v N-toss."""
        assert run_ntoss_game(1, FAIR, SplitMix64.for_trial(SEED, 0)) == 2
        assert run_ntoss_game(0, FAIR, SplitMix64.for_trial(SEED, 0)) == 1


class TestVectorKernel:
    """Testy pro vektorové jádro."""

    @pytest.mark.parametrize("n", [1, 2, 5])
    @pytest.mark.parametrize("bias", [FAIR, Bias(Fraction(2, 3))])
    def test_matches_scalar(self, n, bias):
        """Testuje shodu se skalární hrou."""
        chunk = simulate_chunk(n, bias, SEED, 10, 210)
        games = [run_single_game(n, bias, SplitMix64.for_trial(SEED, t)) for t in range(10, 210)]
        counts = [0] * n
        for game in games:
            counts[game.final_k] += 1
        assert chunk.counts.tolist() == counts
        assert chunk.total_tosses == sum(g.total_tosses for g in games)
        assert chunk.total_squared_tosses == sum(g.total_tosses ** 2 for g in games)
        assert chunk.max_tosses == max(g.total_tosses for g in games)
        assert chunk.min_position == min(g.min_pos for g in games)

    def test_invalid_range(self):
        """Testuje neplatný rozsah."""
        with pytest.raises(ValueError):
            simulate_chunk(3, FAIR, SEED, 5, 5)

    def test_chunk_bounds(self):
        """Testuje meze chunků."""
        assert chunk_bounds(10, 4) == [(0, 4), (4, 8), (8, 10)]


class TestRunTrials:
    """Testy pro run_trials."""

    def test_config_validation(self):
        """Testuje validaci konfigurace."""
        config = SimConfig(n_particles=3, trials=10, master_seed=1, bias="2/3")
        assert config.bias == Bias(Fraction(2, 3))
        with pytest.raises(ValidationError):
            SimConfig(n_particles=0, trials=10, master_seed=1)
        with pytest.raises(ValidationError):
            SimConfig(n_particles=3, trials=10, master_seed=-1)
        with pytest.raises(ValidationError):
            SimConfig(n_particles=3, trials=10, master_seed=1, bias="3/2")

    def test_deterministic_across_workers_and_chunks(self):
        """Testuje determinismus přes vlákna a chunky."""
        base = SimConfig(n_particles=5, trials=2000, master_seed=SEED, worker_count=1, chunk_size=2000)
        variants = [
            base.model_copy(update={'worker_count': 4, 'chunk_size': 256}),
            base.model_copy(update={'worker_count': 2, 'chunk_size': 333}),
        ]
        reference = run_trials(base)
        assert all(run_trials(v) == reference for v in variants)

    def test_two_particles(self):
        """Testuje dvě částice."""
        summary = run_trials(SimConfig(n_particles=2, trials=500, master_seed=SEED))
        assert summary.total_tosses == 500
        assert summary.variance_tosses == 0.0
        assert sum(summary.counts_by_k) == 500

    def test_single_trial_has_zero_variance(self):
        """Testuje nulový rozptyl pro jeden trial."""
        summary = run_trials(SimConfig(n_particles=4, trials=1, master_seed=SEED))
        assert summary.variance_tosses == 0.0
        assert summary.min_tosses == summary.max_tosses

    def test_distribution_within_band(self):
        """Testuje rozdělení uvnitř pásu."""
        n, trials = 5, 20000
        summary = run_trials(SimConfig(n_particles=n, trials=trials, master_seed=SEED, chunk_size=4096))
        exact = exact_distribution(n).probabilities(range(n))
        assert all(ok for _, ok in cells_within_band(summary.counts_by_k, exact, trials))
        assert abs(summary.mean_tosses - float(closed_form_E(n))) <= 5 * summary.std_error_tosses
        assert summary.frequencies() == [c / trials for c in summary.counts_by_k]


class TestEmpiricalNToss:
    """Testy pro empirické N-toss rozdělení."""

    def test_one_toss(self):
        """Testuje jeden hod."""
        assert empirical_ntoss(1, 100, master_seed=SEED) == {2: 100}

    def test_two_tosses(self):
        """Testuje dva hody."""
        counts = empirical_ntoss(2, 4000, master_seed=SEED, chunk_size=1000)
        assert set(counts) == {2, 3}
        assert abs(counts[2] / 4000 - 0.5) < 5 * 0.5 / np.sqrt(4000)

    def test_matches_scalar(self):
        """Testuje shodu se skalární verzí."""
        counts = empirical_ntoss(6, 300, master_seed=SEED, worker_count=3, chunk_size=64)
        expected = {}
        for t in range(300):
            n = run_ntoss_game(6, FAIR, SplitMix64.for_trial(SEED, t))
            expected[n] = expected.get(n, 0) + 1
        assert counts == dict(sorted(expected.items()))

    def test_invalid(self):
        """Testuje neplatné vstupy."""
        with pytest.raises(ValueError):
            empirical_ntoss(0, 10)
        with pytest.raises(ValueError):
            empirical_ntoss(3, 0)
        with pytest.raises(ValueError):
            empirical_ntoss(3, 10, worker_count=0)
