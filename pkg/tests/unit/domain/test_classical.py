"""Unit tests for ClassicalEstimators."""

import math

import numpy as np
import pytest

from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector

LOG2 = math.log(2.0)
H_211 = 0.5 * LOG2 + 2 * 0.25 * math.log(4.0)


class TestMleEntropy:
    """Tests for the plug-in estimator."""

    def test_uniform_sample(self, classical):
        """Test counts (1, 1) -> log 2."""
        estimate = classical.mle_entropy(FrequencyVector.from_counts([1, 1]))

        assert estimate.value == pytest.approx(LOG2, abs=1e-15)
        assert estimate.method is EstimatorMethod.MLE
        assert estimate.params_used is None

    def test_single_species(self, classical):
        """Test counts (4) -> 0."""
        assert classical.mle_entropy(FrequencyVector.from_counts([4])).value == 0.0

    def test_mixed_counts(self, classical, y_211):
        """Test counts (2, 1, 1) -> 1.0397208."""
        value = classical.mle_entropy(y_211).value

        assert value == pytest.approx(H_211, abs=1e-15)
        assert value == pytest.approx(1.0397208, abs=1e-7)

    def test_permutation_invariance(self, classical):
        """Test that the order of the counts does not matter."""
        a = classical.mle_entropy(FrequencyVector.from_counts([5, 1, 3, 1]))
        b = classical.mle_entropy(FrequencyVector.from_counts([1, 1, 3, 5]))
        assert a.value == pytest.approx(b.value, abs=1e-15)


class TestMillerMadowEntropy:
    """Tests for the bias-corrected plug-in estimator."""

    def test_uniform_sample(self, classical):
        """Test counts (1, 1) -> log 2 + 1/4."""
        value = classical.miller_madow_entropy(FrequencyVector.from_counts([1, 1])).value
        assert value == pytest.approx(LOG2 + 0.25, abs=1e-15)

    def test_single_species_has_no_correction(self, classical):
        """Test counts (4) -> 0."""
        assert classical.miller_madow_entropy(FrequencyVector.from_counts([4])).value == 0.0

    def test_mixed_counts(self, classical, y_211):
        """Test counts (2, 1, 1) -> 1.2897208."""
        value = classical.miller_madow_entropy(y_211).value
        assert value == pytest.approx(H_211 + 2.0 / 8.0, abs=1e-15)
        assert value == pytest.approx(1.2897208, abs=1e-7)


class TestGoodTuringProbs:
    """Tests for coverage-adjusted probabilities."""

    def test_full_coverage(self, classical):
        """Test counts (2, 2) -> (0.5, 0.5)."""
        probs = classical.good_turing_probs(FrequencyVector.from_counts([2, 2]))
        np.testing.assert_allclose(probs, [0.5, 0.5])

    def test_half_coverage(self, classical, y_112):
        """Test counts (1, 1, 2) -> (0.125, 0.125, 0.25)."""
        np.testing.assert_allclose(classical.good_turing_probs(y_112), [0.125, 0.125, 0.25])

    def test_all_singletons_are_clamped(self, classical):
        """Test counts (1, 1): m1' = 1 -> (0.25, 0.25)."""
        probs = classical.good_turing_probs(FrequencyVector.from_counts([1, 1]))
        np.testing.assert_allclose(probs, [0.25, 0.25])
        assert np.all(probs > 0)


class TestChaoShenEntropy:
    """Tests for the Chao-Shen estimator."""

    def test_full_coverage(self, classical):
        """Test counts (2, 2) -> log 2 / (1 - 0.5^4)."""
        value = classical.chao_shen_entropy(FrequencyVector.from_counts([2, 2])).value

        assert value == pytest.approx(LOG2 / 0.9375, abs=1e-14)
        assert value == pytest.approx(0.7393570, abs=1e-7)

    def test_single_species(self, classical):
        """Test counts (4) -> 0."""
        assert classical.chao_shen_entropy(FrequencyVector.from_counts([4])).value == 0.0

    def test_matches_term_by_term_formula(self, classical, y_112):
        """Test counts (1, 1, 2) against the formula evaluated term by term."""
        expected = 0.0
        for p in (0.125, 0.125, 0.25):
            expected += -p * math.log(p) / (1.0 - (1.0 - p) ** 4)

        assert classical.chao_shen_entropy(y_112).value == pytest.approx(expected, abs=1e-14)

    def test_all_singletons_finite(self, classical):
        """Test that the clamp keeps the estimate finite."""
        value = classical.chao_shen_entropy(FrequencyVector.from_counts([1] * 10)).value
        assert math.isfinite(value)
        assert value > 0


class TestCoverageEstimates:
    """Tests for the Good-Turing plug-ins."""

    def test_plug_in_values(self, classical, y_112):
        """Test counts (1, 1, 2) -> C0=0.5, C1=0.25, K=8, F=1.5."""
        coverage = classical.coverage_estimates(y_112)

        assert coverage.c0_hat == pytest.approx(0.5)
        assert coverage.c1_hat == pytest.approx(0.25)
        assert coverage.c01_hat == pytest.approx(0.75)
        assert coverage.k_hat == pytest.approx(8.0)
        assert coverage.f_hat == pytest.approx(1.5)

    def test_f_coefficient_formula(self, classical, rng):
        """Test F = (C0 / 2)(K - T + 1) with K = N / (1 - C0), never below C0 / 2."""
        for _ in range(50):
            y = FrequencyVector.from_counts(rng.integers(1, 6, size=rng.integers(2, 40)))
            coverage = classical.coverage_estimates(y)

            expected = 0.5 * coverage.c0_hat * (coverage.k_hat - y.T + 1)
            assert coverage.k_hat == pytest.approx(y.N / (1.0 - coverage.c0_hat))
            assert coverage.f_hat == pytest.approx(expected)
            assert coverage.f_hat >= 0.5 * coverage.c0_hat

    def test_no_singletons(self, classical, y_no_singletons):
        """Test that full coverage gives C0 = C1 = F = 0 and K = N."""
        coverage = classical.coverage_estimates(y_no_singletons)

        assert coverage.c0_hat == 0.0
        assert coverage.c1_hat == 0.0
        assert coverage.f_hat == 0.0
        assert coverage.k_hat == y_no_singletons.N

    def test_singleton_clamp_is_logged(self, classical, caplog):
        """Test that the all-singletons clamp is reported."""
        with caplog.at_level("INFO", logger="unseen"):
            coverage = classical.coverage_estimates(FrequencyVector.from_counts([1, 1, 1]))

        assert coverage.c0_hat == pytest.approx(2.0 / 3.0)
        assert "singletons" in caplog.text
