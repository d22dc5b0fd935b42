"""
Classical entropy estimators and Good-Turing coverage plug-ins.

All estimators are invariant under permutation of the counts.
"""

import logging

import numpy as np
from scipy.special import entr

from unseen.domain.models.estimate import EntropyEstimate, EstimatorMethod
from unseen.domain.models.frequency import CoverageEstimates, FrequencyVector

logger = logging.getLogger(__name__)


class ClassicalEstimators:
    """Plug-in, Miller-Madow and Chao-Shen estimators plus coverage estimates."""

    def mle_entropy(self, y: FrequencyVector) -> EntropyEstimate:
        """
        Plug-in estimator -sum (n_i/N) log(n_i/N).

        Args:
            y: Observed frequencies

        Returns:
            EntropyEstimate tagged mle
        """
        value = float(np.sum(entr(y.mle_probs())))
        return EntropyEstimate(value=value, method=EstimatorMethod.MLE)

    def miller_madow_entropy(self, y: FrequencyVector) -> EntropyEstimate:
        """
        Plug-in estimator with the (T - 1) / (2N) bias correction.

        Args:
            y: Observed frequencies

        Returns:
            EntropyEstimate tagged miller_madow
        """
        value = self.mle_entropy(y).value + (y.T - 1) / (2.0 * y.N)
        return EntropyEstimate(value=value, method=EstimatorMethod.MILLER_MADOW)

    def good_turing_probs(self, y: FrequencyVector) -> np.ndarray:
        """
        Coverage-adjusted probabilities (1 - m1'/N) n_i / N.

        The entries do not sum to 1; the remainder is the unseen allowance.

        Args:
            y: Observed frequencies

        Returns:
            Array aligned with y.counts, strictly positive
        """
        coverage = 1.0 - self._clamped_singletons(y) / y.N
        return coverage * y.mle_probs()

    def chao_shen_entropy(self, y: FrequencyVector) -> EntropyEstimate:
        """
        Horvitz-Thompson estimator over Good-Turing probabilities.

        Each term -p log p is divided by the inclusion probability 1 - (1 - p)^N.

        Args:
            y: Observed frequencies

        Returns:
            EntropyEstimate tagged chao_shen
        """
        probs = self.good_turing_probs(y)
        with np.errstate(divide="ignore"):
            # 1 - (1 - p)^N without cancellation; p = 1 gives log1p(-1) = -inf
            inclusion = -np.expm1(y.N * np.log1p(-probs))
        value = float(np.sum(entr(probs) / inclusion))
        return EntropyEstimate(value=value, method=EstimatorMethod.CHAO_SHEN)

    def coverage_estimates(self, y: FrequencyVector) -> CoverageEstimates:
        """
        Good-Turing plug-ins for the unseen and singleton masses.

        Args:
            y: Observed frequencies

        Returns:
            CoverageEstimates with F floored at 0
        """
        m1 = self._clamped_singletons(y)
        c0 = m1 / y.N
        c1 = (1.0 - c0) * m1 / y.N
        k_hat = y.N / (1.0 - c0)
        f_hat = max(0.0, 0.5 * c0 * (k_hat - y.T + 1))
        logger.debug(f"Coverage: C0={c0:.6g} C1={c1:.6g} K={k_hat:.6g} F={f_hat:.6g}")
        return CoverageEstimates(c0_hat=c0, c1_hat=c1, c01_hat=c0 + c1, k_hat=k_hat, f_hat=f_hat)

    def _clamped_singletons(self, y: FrequencyVector) -> int:
        if y.m1 == y.N:
            logger.info(f"All {y.N} observations are singletons; using m1 = {y.N - 1}")
        return y.clamped_m1
