"""
Testy pro cli/verify.py.
"""

import sys
from pathlib import Path

import pytest

# Přidej cli do path
sys.path.insert(0, str(Path(__file__).parent.parent))

from idla.config import Settings
from verify import SUITES, CheckResult, first_failure, run_suites


@pytest.fixture
def small_settings():
    return Settings(verify_mc_trials=2000, verify_mc_seeds=[20240501, 7, 1234567], chunk_size=512)


class TestHelpers:
    """Testy pomocných funkcí."""

    def test_first_failure(self):
        """Testuje hledání prvního selhání."""
        assert first_failure([1, 2, 3], lambda x: x < 5, str) is None
        assert first_failure([1, 7, 9], lambda x: x < 5, lambda x: f"x={x}") == "x=7"


class TestSuites:
    """Testy pro sady kontrol."""

    @pytest.mark.parametrize("suite", ["algebra", "eulerian", "genfun", "biased"])
    def test_exact_suites_pass(self, suite, small_settings):
        """Testuje, že přesné sady projdou."""
        results = run_suites(suite, small_settings)
        assert results
        assert all(isinstance(r, CheckResult) for r in results)
        failed = [(r.check, r.detail) for r in results if not r.passed]
        assert failed == []

    def test_chain_suite_passes(self, small_settings):
        """Testuje sadu chain včetně publikovaných hodnot."""
        results = run_suites("chain", small_settings)
        checks = {r.check: r.passed for r in results}
        assert checks['ntoss_published_array']
        assert checks['published_mean_tosses_within_1pct']
        assert all(checks.values())

    def test_montecarlo_reproducibility_checks(self, small_settings):
        """Testuje kontroly reprodukovatelnosti Monte Carlo."""
        results = {r.check: r for r in run_suites("montecarlo", small_settings)}
        assert results['vectorized_equals_scalar'].passed
        assert results['deterministic_across_workers'].passed
        assert {f"chi_square_n{n}" for n in range(3, 8)} <= set(results)
        assert {f"mean_tosses_n{n}" for n in (10, 15, 20)} <= set(results)

    def test_biased_orientation_detail(self, small_settings):
        """Testuje orientaci rho v popisu kontroly."""
        result = next(r for r in run_suites("biased", small_settings) if r.check == "rho_orientation")
        assert result.detail == "rho = p_right/p_left"

    def test_unknown_suite(self):
        """Testuje neznámou sadu."""
        with pytest.raises(ValueError, match="Neznámá sada"):
            run_suites("nope")

    def test_suite_names(self):
        """Testuje pořadí sad."""
        assert list(SUITES) == ["algebra", "eulerian", "genfun", "chain", "biased", "montecarlo"]
