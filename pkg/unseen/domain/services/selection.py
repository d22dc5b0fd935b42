"""
Data-driven choice of the Pitman-Yor hyperparameters.

The cross entropy between the true distribution and the DPYM predictive is
bounded above by

    f(d, a) = log(N + a) - C01 log(1 - d) + F log((a + T d + 1) / (a + T d))

with C01 = C0 + C1 and F = (C0 / 2)(K - T + 1). The selector plugs in the
Good-Turing estimates, evaluates f at its closed-form critical points and at
two boundary points, and keeps the minimizer.
"""

import logging
import math
from typing import List, Optional, Tuple

from unseen.domain.exceptions import UpperBoundDomainError
from unseen.domain.models.frequency import CoverageEstimates, FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.selection import (
    Candidate,
    CandidateLabel,
    SelectionConfig,
    SelectionDiagnostics,
)
from unseen.domain.services.classical import ClassicalEstimators

logger = logging.getLogger(__name__)

RULE_LARGE_SAMPLE = "large_sample_defaults"
RULE_ARGMIN = "argmin_candidates"


def _bound(d: float, alpha: float, N: int, T: int, c01: float, f: float) -> float:
    if not d < 1.0:
        raise UpperBoundDomainError(f"Upper bound needs d < 1, got {d!r}")
    if N + alpha <= 0:
        raise UpperBoundDomainError(f"Upper bound needs N + alpha > 0, got {N + alpha!r}")
    s = alpha + T * d
    if s <= 0:
        raise UpperBoundDomainError(f"Upper bound needs alpha + T d > 0, got {s!r}")
    return math.log(N + alpha) - c01 * math.log1p(-d) + f * math.log1p(1.0 / s)


def stationary_alpha(d: float, N: int, T: int, f: float) -> float:
    """
    Concentration minimizing the upper bound at a fixed discount.

    Solves (a + T d)(a + T d + 1) = F (N + a) for its larger root.

    Args:
        d: Fixed discount
        N: Sample size
        T: Observed species
        f: The F coefficient

    Returns:
        alpha(d)

    Raises:
        UpperBoundDomainError: If the discriminant is negative
    """
    disc = (1.0 - f) ** 2 + 4.0 * f * (N - T * d)
    if disc < 0:
        raise UpperBoundDomainError(f"No stationary alpha at d={d!r}: discriminant {disc!r} < 0")
    return (-(2.0 * T * d + 1.0 - f) + math.sqrt(disc)) / 2.0


class HyperparameterSelector:
    """Upper bound function, candidate set and argmin rule."""

    def __init__(self, classical: Optional[ClassicalEstimators] = None):
        """
        Initialize the selector.

        Args:
            classical: Provider of the Good-Turing coverage estimates
        """
        self.classical = classical or ClassicalEstimators()

    def upper_bound_f(
        self, d: float, alpha: float, N: int, T: int, C0: float, C1: float, K: float
    ) -> float:
        """
        Upper bound on the cross entropy H(p, q) at (d, alpha).

        Args:
            d: Discount
            alpha: Concentration
            N: Sample size
            T: Observed species
            C0: Mass of unseen species
            C1: Mass of singleton species
            K: Number of species

        Returns:
            f(d, alpha)

        Raises:
            UpperBoundDomainError: If alpha + T d <= 0 or d >= 1
        """
        f_coef = 0.5 * C0 * (K - T + 1)
        return _bound(d, alpha, N, T, C0 + C1, f_coef)

    def upper_bound_gradient(
        self, d: float, alpha: float, N: int, T: int, C0: float, C1: float, K: float
    ) -> Tuple[float, float]:
        """
        Analytic partial derivatives of the upper bound.

        Returns:
            (df/dalpha, df/dd)
        """
        f_coef = 0.5 * C0 * (K - T + 1)
        s = alpha + T * d
        if s <= 0:
            raise UpperBoundDomainError(f"Upper bound needs alpha + T d > 0, got {s!r}")
        log_ratio_slope = 1.0 / (s + 1.0) - 1.0 / s
        d_alpha = 1.0 / (N + alpha) + f_coef * log_ratio_slope
        d_d = (C0 + C1) / (1.0 - d) + T * f_coef * log_ratio_slope
        return d_alpha, d_d

    def estimated_upper_bound(
        self,
        y: FrequencyVector,
        d: float,
        alpha: float,
        coverage: Optional[CoverageEstimates] = None,
    ) -> float:
        """
        Upper bound with Good-Turing plug-ins (C0, C1, K, and F floored at 0).

        Args:
            y: Observed frequencies
            d: Discount
            alpha: Concentration
            coverage: Precomputed coverage estimates of y

        Returns:
            Estimated f(d, alpha)
        """
        coverage = coverage or self.classical.coverage_estimates(y)
        return _bound(d, alpha, y.N, y.T, coverage.c01_hat, coverage.f_hat)

    def critical_candidates(
        self, y: FrequencyVector, coverage: Optional[CoverageEstimates] = None
    ) -> List[Candidate]:
        """
        Feasible interior critical points of the estimated upper bound.

        Both partial derivatives vanish when alpha = T(1 - d)/C01 - N and d
        solves a d^2 + b d + c = 0 with

            a = (C01 - 1)^2 T^2
            b = [(C01 - 1)(2T - 2 C01 N + C01) + F C01] T
            c = (T - C01 N + C01)(T - C01 N) - T F C01

        Args:
            y: Observed frequencies
            coverage: Precomputed coverage estimates of y

        Returns:
            Zero, one or two candidates with objectives
        """
        if y.m1 == 0:
            return []
        coverage = coverage or self.classical.coverage_estimates(y)
        c01, f_coef = coverage.c01_hat, coverage.f_hat
        N, T = y.N, y.T

        if c01 <= 0 or c01 >= T / N:
            logger.debug(f"No interior candidates: C01={c01:.6g}, T/N={T / N:.6g}")
            return []

        a = (c01 - 1.0) ** 2 * T**2
        b = ((c01 - 1.0) * (2.0 * T - 2.0 * c01 * N + c01) + f_coef * c01) * T
        c = (T - c01 * N + c01) * (T - c01 * N) - T * f_coef * c01
        disc = b * b - 4.0 * a * c
        if a == 0 or disc < 0:
            return []

        root = math.sqrt(disc)
        d_limit = (T - c01 * N) / (T - c01)
        candidates = []
        for label, d in (
            (CandidateLabel.INTERIOR_PLUS, (-b + root) / (2.0 * a)),
            (CandidateLabel.INTERIOR_MINUS, (-b - root) / (2.0 * a)),
        ):
            alpha = T * (1.0 - d) / c01 - N
            feasible = 0.0 <= d < 1.0 and alpha > -d and alpha + T * d > 0 and d < d_limit
            if not feasible:
                logger.debug(f"Dropped {label.value} candidate d={d:.6g} alpha={alpha:.6g}")
                continue
            objective = _bound(d, alpha, N, T, c01, f_coef)
            candidates.append(Candidate(PyParams(d, alpha), label, objective))
        return candidates

    def boundary_candidates(
        self,
        y: FrequencyVector,
        cfg: Optional[SelectionConfig] = None,
        coverage: Optional[CoverageEstimates] = None,
    ) -> List[Candidate]:
        """
        Candidates on the d = 0 and d = 1 - epsilon edges.

        Each uses the stationary alpha at its discount. Any candidate with
        alpha <= -d is moved to alpha = -d + epsilon_clamp and labeled clamped.

        Args:
            y: Observed frequencies
            cfg: Selection settings
            coverage: Precomputed coverage estimates of y

        Returns:
            Two candidates with objectives
        """
        cfg = cfg or SelectionConfig()
        coverage = coverage or self.classical.coverage_estimates(y)
        f_coef = coverage.f_hat
        N, T = y.N, y.T

        if cfg.literal_boundary:
            d0, alpha0 = cfg.d0_default, 0.0
        else:
            d0, alpha0 = 0.0, stationary_alpha(0.0, N, T, f_coef)
        d1 = 1.0 - cfg.epsilon_boundary
        alpha1 = stationary_alpha(d1, N, T, f_coef)

        candidates = []
        for label, d, alpha in (
            (CandidateLabel.BOUNDARY_D0, d0, alpha0),
            (CandidateLabel.BOUNDARY_D1, d1, alpha1),
        ):
            if alpha <= -d:
                logger.debug(f"Clamped {label.value} alpha={alpha:.6g} to -d + epsilon")
                alpha = -d + cfg.epsilon_clamp
                label = CandidateLabel.CLAMPED
            objective = _bound(d, alpha, N, T, coverage.c01_hat, f_coef)
            candidates.append(Candidate(PyParams(d, alpha), label, objective))
        return candidates

    def select_params(
        self, y: FrequencyVector, cfg: Optional[SelectionConfig] = None
    ) -> Tuple[PyParams, SelectionDiagnostics]:
        """
        Choose (d, alpha) for y.

        Without singletons (after the all-singletons clamp) the configured
        large-sample defaults are returned. Otherwise the candidate with the
        smallest estimated upper bound wins; ties go to smaller d, then
        smaller alpha.

        Args:
            y: Observed frequencies
            cfg: Selection settings

        Returns:
            Tuple of (selected parameters, diagnostics)
        """
        cfg = cfg or SelectionConfig()
        singleton_clamped = y.m1 == y.N

        if y.clamped_m1 == 0:
            params = PyParams(cfg.d0_default, cfg.alpha0_default)
            chosen = Candidate(params, CandidateLabel.DEFAULT_LARGE_SAMPLE)
            logger.info(
                f"No singletons: large-sample defaults d={params.d:g} alpha={params.alpha:g}"
            )
            return params, SelectionDiagnostics(
                rule=RULE_LARGE_SAMPLE,
                chosen=chosen,
                candidates=[chosen],
                singleton_clamped=singleton_clamped,
            )

        coverage = self.classical.coverage_estimates(y)
        candidates = self.critical_candidates(y, coverage) + self.boundary_candidates(
            y, cfg, coverage
        )
        chosen = min(
            candidates, key=lambda cand: (cand.objective, cand.params.d, cand.params.alpha)
        )
        for candidate in candidates:
            logger.debug(
                f"Candidate {candidate.label.value}: d={candidate.params.d:.6g} "
                f"alpha={candidate.params.alpha:.6g} f={candidate.objective:.10g}"
            )
        logger.info(
            f"Selected {chosen.label.value}: d={chosen.params.d:.6g} "
            f"alpha={chosen.params.alpha:.6g} (f={chosen.objective:.6g})"
        )
        return chosen.params, SelectionDiagnostics(
            rule=RULE_ARGMIN,
            chosen=chosen,
            candidates=candidates,
            coverage=coverage,
            singleton_clamped=singleton_clamped,
        )
