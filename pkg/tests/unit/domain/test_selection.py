"""Unit tests for HyperparameterSelector."""

import math

import pytest

from unseen.domain.exceptions import UpperBoundDomainError
from unseen.domain.models.frequency import CoverageEstimates, FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.selection import CandidateLabel, SelectionConfig
from unseen.domain.services.selection import (
    RULE_ARGMIN,
    RULE_LARGE_SAMPLE,
    stationary_alpha,
)


def _coverage_with_critical_point(d_star: float, alpha_star: float, N: int, T: int):
    """Plug-ins for which (d_star, alpha_star) is a stationary point of the bound."""
    c01 = T * (1.0 - d_star) / (N + alpha_star)
    s = alpha_star + T * d_star
    f_coef = s * (s + 1.0) / (N + alpha_star)
    c0 = 0.2
    k = 2.0 * f_coef / c0 + T - 1.0
    return CoverageEstimates(c0_hat=c0, c1_hat=c01 - c0, c01_hat=c01, k_hat=k, f_hat=f_coef)


@pytest.fixture
def y_100_50():
    """N=100, T=50 with ten singletons."""
    return FrequencyVector.from_counts([1] * 10 + [2] * 30 + [3] * 10)


class TestUpperBound:
    """Tests for the upper bound function."""

    def test_no_unseen_mass(self, selector):
        """Test that C0 = C1 = 0 reduces the bound to log(N + alpha)."""
        value = selector.upper_bound_f(0.3, 2.0, 100, 40, 0.0, 0.0, 40)
        assert value == pytest.approx(math.log(102.0), abs=1e-15)

    def test_closed_form(self, selector):
        """Test a hand-evaluated point."""
        value = selector.upper_bound_f(0.5, 1.0, 4, 3, 0.5, 0.25, 8)
        expected = math.log(5.0) - 0.75 * math.log(0.5) + 1.5 * math.log1p(1.0 / 2.5)
        assert value == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("d, alpha", [(1.0, 1.0), (0.0, -101.0), (0.5, -3.0)])
    def test_outside_domain(self, selector, d, alpha):
        """Test d >= 1, N + alpha <= 0 and alpha + T d <= 0."""
        with pytest.raises(UpperBoundDomainError):
            selector.upper_bound_f(d, alpha, 100, 4, 0.3, 0.1, 200)

    @pytest.mark.parametrize("d, alpha", [(0.1, 5.0), (0.6, -0.3), (0.9, 100.0)])
    def test_gradient_matches_central_difference(self, selector, d, alpha):
        """Test the analytic gradient against finite differences."""
        args = (100, 40, 0.15, 0.1, 160.0)
        h = 1e-6
        d_alpha, d_d = selector.upper_bound_gradient(d, alpha, *args)

        f = selector.upper_bound_f
        num_alpha = (f(d, alpha + h, *args) - f(d, alpha - h, *args)) / (2 * h)
        num_d = (f(d + h, alpha, *args) - f(d - h, alpha, *args)) / (2 * h)

        assert d_alpha == pytest.approx(num_alpha, rel=1e-5, abs=1e-8)
        assert d_d == pytest.approx(num_d, rel=1e-5, abs=1e-8)

    def test_estimated_bound_uses_plug_ins(self, selector, classical, y_112):
        """Test the Good-Turing plug-in version on (1, 1, 2)."""
        value = selector.estimated_upper_bound(y_112, 0.0, 1.0)
        expected = selector.upper_bound_f(0.0, 1.0, 4, 3, 0.5, 0.25, 8.0)
        assert value == pytest.approx(expected, abs=1e-15)


class TestStationaryAlpha:
    """Tests for the fixed-discount minimizer."""

    def test_zero_discount_example(self):
        """Test N=4, T=3, F=1.5 at d=0 -> alpha ~ 2.7122."""
        assert stationary_alpha(0.0, 4, 3, 1.5) == pytest.approx(2.7122145, abs=1e-6)

    def test_zero_alpha_derivative(self, selector):
        """Test that df/dalpha vanishes at the stationary alpha."""
        N, T, C0, C1, K = 100, 40, 0.15, 0.1, 160.0
        f_coef = 0.5 * C0 * (K - T + 1)
        for d in (0.0, 0.2, 0.5):
            alpha = stationary_alpha(d, N, T, f_coef)
            d_alpha, _ = selector.upper_bound_gradient(d, alpha, N, T, C0, C1, K)
            assert abs(d_alpha) < 1e-12


class TestCriticalCandidates:
    """Tests for interior critical points."""

    def test_recovers_constructed_critical_point(self, selector, y_100_50):
        """Test that a stationary point built into the plug-ins is found."""
        coverage = _coverage_with_critical_point(0.3, 10.0, 100, 50)
        candidates = selector.critical_candidates(y_100_50, coverage)

        assert len(candidates) == 1
        candidate = candidates[0]
        assert candidate.params.d == pytest.approx(0.3, abs=1e-9)
        assert candidate.params.alpha == pytest.approx(10.0, abs=1e-6)
        assert candidate.label in (CandidateLabel.INTERIOR_PLUS, CandidateLabel.INTERIOR_MINUS)

    def test_gradient_vanishes_at_candidates(self, selector, y_100_50):
        """Test gradient norm < 1e-4 at every returned interior candidate."""
        for d_star, alpha_star in ((0.3, 10.0), (0.1, 3.0), (0.05, 40.0)):
            coverage = _coverage_with_critical_point(d_star, alpha_star, 100, 50)
            candidates = selector.critical_candidates(y_100_50, coverage)
            assert candidates

            for candidate in candidates:
                grad = selector.upper_bound_gradient(
                    candidate.params.d,
                    candidate.params.alpha,
                    100,
                    50,
                    coverage.c0_hat,
                    coverage.c1_hat,
                    coverage.k_hat,
                )
                assert math.hypot(*grad) < 1e-4

    def test_infeasible_when_coverage_too_low(self, selector, y_112):
        """Test that C01 >= T/N yields no interior candidates."""
        assert selector.critical_candidates(y_112) == []

    def test_none_without_singletons(self, selector, y_no_singletons):
        """Test that there are no interior candidates when m1 = 0."""
        assert selector.critical_candidates(y_no_singletons) == []


class TestBoundaryCandidates:
    """Tests for the edge candidates."""

    def test_zero_discount_candidate(self, selector, y_112):
        """Test that (0, alpha_0 ~ 2.7122) is a candidate for (1, 1, 2)."""
        candidates = selector.boundary_candidates(y_112)
        d0 = candidates[0]

        assert d0.label is CandidateLabel.BOUNDARY_D0
        assert d0.params.d == 0.0
        assert d0.params.alpha == pytest.approx(2.7122145, abs=1e-6)

    def test_high_discount_candidate_is_clamped(self, selector, y_112):
        """Test that alpha(1 - eps) <= -d is moved inside the domain."""
        d1 = selector.boundary_candidates(y_112)[1]

        assert d1.label is CandidateLabel.CLAMPED
        assert d1.params.d == pytest.approx(1.0 - 1e-6)
        assert d1.params.alpha == pytest.approx(-d1.params.d + 1e-6)

    def test_literal_boundary(self, selector, y_112):
        """Test that the literal (d0, 0) edge candidate is clamped to (0, eps)."""
        cfg = SelectionConfig(literal_boundary=True)
        d0 = selector.boundary_candidates(y_112, cfg)[0]

        assert d0.label is CandidateLabel.CLAMPED
        assert d0.params == PyParams(0.0, cfg.epsilon_clamp)

    def test_candidates_carry_objectives(self, selector, y_112):
        """Test that each candidate stores its bound value."""
        for candidate in selector.boundary_candidates(y_112):
            expected = selector.estimated_upper_bound(
                y_112, candidate.params.d, candidate.params.alpha
            )
            assert candidate.objective == pytest.approx(expected, abs=1e-15)


class TestSelectParams:
    """Tests for the selection rule."""

    def test_argmin_example(self, selector, y_112):
        """Test that (1, 1, 2) selects the d = 0 edge."""
        params, diagnostics = selector.select_params(y_112)

        assert diagnostics.rule == RULE_ARGMIN
        assert params.d == 0.0
        assert params.alpha == pytest.approx(2.7122145, abs=1e-6)
        assert diagnostics.coverage.c0_hat == pytest.approx(0.5)
        assert not diagnostics.singleton_clamped

    def test_chosen_is_minimum(self, selector, rng):
        """Test that the chosen objective is the smallest candidate objective."""
        for _ in range(50):
            counts = rng.integers(1, 6, size=int(rng.integers(2, 40)))
            counts[0] = 1
            y = FrequencyVector.from_counts(counts)

            params, diagnostics = selector.select_params(y)
            objectives = [c.objective for c in diagnostics.candidates]
            assert diagnostics.chosen.objective == min(objectives)
            assert diagnostics.chosen.params == params

    def test_large_sample_rule(self, selector, y_no_singletons):
        """Test that no singletons gives the configured defaults."""
        params, diagnostics = selector.select_params(y_no_singletons)

        assert params == PyParams(0.0, 1e-8)
        assert diagnostics.rule == RULE_LARGE_SAMPLE
        assert diagnostics.chosen.label is CandidateLabel.DEFAULT_LARGE_SAMPLE
        assert diagnostics.coverage is None

    def test_custom_defaults(self, selector, y_no_singletons):
        """Test overriding the large-sample defaults."""
        cfg = SelectionConfig(d0_default=0.2, alpha0_default=3.0)
        params, _ = selector.select_params(y_no_singletons, cfg)
        assert params == PyParams(0.2, 3.0)

    def test_single_observation(self, selector):
        """Test y=(1): the clamp leaves no singletons."""
        params, diagnostics = selector.select_params(FrequencyVector.from_counts([1]))

        assert diagnostics.rule == RULE_LARGE_SAMPLE
        assert diagnostics.singleton_clamped
        assert params == PyParams(0.0, 1e-8)

    def test_all_singletons(self, selector):
        """Test y=(1, 1) uses the argmin rule with the clamp recorded."""
        params, diagnostics = selector.select_params(FrequencyVector.from_counts([1, 1]))

        assert diagnostics.rule == RULE_ARGMIN
        assert diagnostics.singleton_clamped
        assert diagnostics.coverage.c0_hat == pytest.approx(0.5)

    def test_deterministic(self, selector, y_100_50):
        """Test that repeated selection gives identical parameters."""
        first, _ = selector.select_params(y_100_50)
        second, _ = selector.select_params(y_100_50)
        assert first == second

    def test_diagnostics_serialize(self, selector, y_112):
        """Test the diagnostics dictionary layout."""
        _, diagnostics = selector.select_params(y_112)
        data = diagnostics.to_dict()

        assert data["rule"] == RULE_ARGMIN
        assert data["chosen"]["label"] == "boundary_d0"
        assert len(data["candidates"]) == 2
        assert data["coverage"]["k_hat"] == pytest.approx(8.0)
