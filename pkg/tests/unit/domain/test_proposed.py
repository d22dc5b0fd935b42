"""Unit tests for ProposedEstimator."""

import pytest

from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.selection import SelectionConfig
from unseen.domain.services.selection import RULE_ARGMIN, RULE_LARGE_SAMPLE


class TestProposedEntropy:
    """Tests for the selected-hyperparameter estimator."""

    def test_matches_dpym_at_selected_params(self, proposed, dpym, y_112):
        """Test that the value equals the DPYM entropy at the chosen pair."""
        estimate = proposed.proposed_entropy(y_112)
        fixed = dpym.entropy(y_112, estimate.params_used)

        assert estimate.method is EstimatorMethod.PROPOSED
        assert estimate.value == pytest.approx(fixed.value, abs=1e-15)
        assert estimate.selection_diagnostics.rule == RULE_ARGMIN
        assert estimate.selection_diagnostics.chosen.params == estimate.params_used

    def test_large_sample_agrees_with_plug_in(self, proposed, classical, y_no_singletons):
        """Test that without singletons the estimate is the plug-in to 1e-6."""
        estimate = proposed.proposed_entropy(y_no_singletons)
        mle = classical.mle_entropy(y_no_singletons)

        assert estimate.selection_diagnostics.rule == RULE_LARGE_SAMPLE
        assert estimate.value == pytest.approx(mle.value, abs=1e-6)

    def test_single_observation(self, proposed):
        """Test y=(1) gives a finite, near-zero estimate."""
        estimate = proposed.proposed_entropy(FrequencyVector.from_counts([1]))

        assert estimate.selection_diagnostics.singleton_clamped
        assert 0.0 <= estimate.value < 1e-6

    def test_exceeds_plug_in_with_many_singletons(self, proposed, classical):
        """Test that unseen mass raises the estimate above the plug-in."""
        y = FrequencyVector.from_counts([1] * 20 + [2] * 5)

        assert proposed.proposed_entropy(y).value > classical.mle_entropy(y).value

    def test_configuration_is_forwarded(self, proposed, y_no_singletons):
        """Test that the selection settings reach the selector."""
        estimate = proposed.proposed_entropy(
            y_no_singletons, SelectionConfig(d0_default=0.3, alpha0_default=2.0)
        )
        assert (estimate.params_used.d, estimate.params_used.alpha) == (0.3, 2.0)

    def test_deterministic(self, proposed, y_211):
        """Test that repeated calls agree exactly."""
        first = proposed.proposed_entropy(y_211, truncation_n=2000)
        second = proposed.proposed_entropy(y_211, truncation_n=2000)
        assert first.value == second.value

    def test_serializes_selection(self, proposed, y_211):
        """Test that to_dict carries the selection record."""
        data = proposed.proposed_entropy(y_211).to_dict()

        assert data["method"] == "proposed"
        assert data["selection"]["rule"] == RULE_ARGMIN
        assert set(data["params"]) == {"d", "alpha"}
