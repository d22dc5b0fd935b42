"""Unit tests for DpymModel."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import entr, gammaln

from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams


def tail_sum_beyond(pred, materialized):
    """
    -sum q_k log q_k over the entries of q past the first `materialized` ones.

    The tail pmf extends to real k through its gamma form, so the sum is taken
    as a midpoint integral starting half a step before the first missing entry.
    """
    d, alpha = pred.tail_params.d, pred.tail_params.alpha
    if d == 0.0:
        return 0.0
    a, b = alpha / d, (alpha + 1.0) / d
    const = math.log((1.0 - d) / d) - gammaln(a + 1.0) + gammaln(b)
    const += math.log(pred.tail_weight)

    def term(x):
        log_q = const + gammaln(a + x) - gammaln(b + x)
        return -math.exp(log_q) * log_q

    first = materialized - len(pred.head) + 1
    value, _ = quad(term, first - 0.5, np.inf, epsabs=1e-14, epsrel=1e-10, limit=200)
    return value


class TestPredictive:
    """Tests for the predictive distribution."""

    def test_head_and_tail_weight(self, dpym, y_211):
        """Test y=(2, 1, 1), d=0.5, alpha=1."""
        pred = dpym.predictive(y_211, PyParams(0.5, 1.0))

        np.testing.assert_allclose(pred.head, [0.3, 0.1, 0.1])
        assert pred.tail_weight == pytest.approx(0.5)
        assert pred.tail_params == PyParams(0.5, 2.5)

    def test_head_vector_sums_to_one(self, dpym, rng):
        """Test sum(head) + w = 1 on random inputs."""
        for _ in range(50):
            y = FrequencyVector.from_counts(rng.integers(1, 20, size=rng.integers(1, 30)))
            d = float(rng.uniform(0.0, 0.95))
            params = PyParams(d, float(rng.uniform(-d + 1e-3, 50.0)))

            pred = dpym.predictive(y, params)
            assert float(np.sum(pred.head_vector())) == pytest.approx(1.0, abs=1e-12)
            assert pred.tail_weight > 0

    def test_tail_weight_increases_with_alpha(self, dpym, y_211):
        """Test that at d=0 the tail weight strictly grows with alpha."""
        alphas = [1e-6, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1e4]
        weights = [dpym.predictive(y_211, PyParams(0.0, a)).tail_weight for a in alphas]

        assert all(lo < hi for lo, hi in zip(weights, weights[1:]))
        assert weights[0] == pytest.approx(0.0, abs=1e-6)

    def test_head_is_read_only(self, dpym, y_211):
        """Test that the head array cannot be mutated."""
        pred = dpym.predictive(y_211, PyParams(0.0, 1.0))
        with pytest.raises(ValueError):
            pred.head[0] = 0.0

    def test_probabilities_prefix(self, dpym, y_211):
        """Test the materialized prefix of q."""
        pred = dpym.predictive(y_211, PyParams(0.0, 1.0))
        probs = pred.probabilities(5)

        # tail law is geometric with alpha' = 1
        np.testing.assert_allclose(probs, [0.4, 0.2, 0.2, 0.1, 0.05])


class TestEntropy:
    """Tests for the DPYM entropy."""

    @pytest.mark.parametrize("d", [0.0, 0.25, 0.5])
    def test_matches_flat_sum(self, dpym, y_211, d):
        """Test H(q) against 10^6 materialized entries plus the integrated remainder."""
        params = PyParams(d, 1.0)
        pred = dpym.predictive(y_211, params)
        materialized = 1_000_000
        expected = float(np.sum(entr(pred.probabilities(materialized))))
        expected += tail_sum_beyond(pred, materialized)

        estimate = dpym.entropy(y_211, params)
        assert estimate.value == pytest.approx(expected, abs=2e-5)

    def test_flat_sum_misses_heavy_tail(self, dpym, y_211):
        """Test that at d=0.5 the entries past 10^6 still carry more than 2e-5 nats."""
        pred = dpym.predictive(y_211, PyParams(0.5, 1.0))
        assert tail_sum_beyond(pred, 1_000_000) > 2e-5

    def test_all_singletons_zero_concentration(self, dpym):
        """Test y=(1, 1, 1, 1), d=0.5, alpha=0 against the flat sum."""
        y = FrequencyVector.from_counts([1, 1, 1, 1])
        params = PyParams(0.5, 0.0)
        pred = dpym.predictive(y, params)

        assert pred.tail_weight == pytest.approx(0.5)
        np.testing.assert_allclose(pred.head, [0.125] * 4)

        expected = float(np.sum(entr(pred.probabilities(1_000_000))))
        assert dpym.entropy(y, params).value == pytest.approx(expected, abs=1e-3)

    def test_grouping_decomposition(self, dpym, marginal, y_211):
        """Test H(q) = H(q*) + w * H(pi) for the geometric tail."""
        params = PyParams(0.0, 3.0)
        pred = dpym.predictive(y_211, params)
        tail = marginal.entropy(pred.tail_params).value

        expected = dpym.head_entropy(pred) + pred.tail_weight * tail
        assert dpym.entropy(y_211, params).value == pytest.approx(expected, abs=1e-14)

    def test_estimate_metadata(self, dpym, y_211):
        """Test the method tag and recorded parameters."""
        estimate = dpym.entropy(y_211, PyParams(0.5, 0.0), truncation_n=500)

        assert estimate.method is EstimatorMethod.DPYM_FIXED
        assert estimate.params_used == PyParams(0.5, 0.0)
        assert estimate.truncation_n >= 500
        assert estimate.remainder_bound >= 0.0


class TestSample:
    """Tests for posterior draws."""

    def test_weights_are_a_distribution(self, dpym, y_211, rng):
        """Test that a posterior draw covers at least 1 - mass_tol."""
        weights = dpym.sample(y_211, PyParams(0.5, 1.0), rng, mass_tol=1e-6)

        assert np.all(weights >= 0)
        assert len(weights) > y_211.T
        assert 1.0 - 1e-6 <= float(np.sum(weights)) <= 1.0 + 1e-12

    def test_mean_matches_predictive(self, dpym, y_211):
        """Test that averaged draws reproduce the head of q and the first tail entries."""
        params = PyParams(0.5, 1.0)
        rng = np.random.default_rng(31)
        length = y_211.T + 3
        draws = np.zeros((4000, length))
        for row in draws:
            weights = dpym.sample(y_211, params, rng, mass_tol=1e-6)[:length]
            row[: len(weights)] = weights

        expected = dpym.predictive(y_211, params).probabilities(length)
        mean = draws.mean(axis=0)
        stderr = draws.std(axis=0, ddof=1) / math.sqrt(len(draws))
        assert np.all(np.abs(mean - expected) <= 4.0 * stderr)

    def test_reproducible(self, dpym, y_211):
        """Test that equal seeds give equal draws."""
        params = PyParams(0.25, 2.0)
        a = dpym.sample(y_211, params, np.random.default_rng(11), 1e-5)
        b = dpym.sample(y_211, params, np.random.default_rng(11), 1e-5)
        np.testing.assert_array_equal(a, b)
