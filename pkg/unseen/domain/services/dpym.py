"""
Dirichlet-Pitman-Yor mixture model.

Observed species receive Dirichlet-distributed mass; the remaining mass is
spread over unseen species by a Pitman-Yor random vector. Its predictive
distribution is the infinite vector

    q = ((n_1 - d)/(N + a), ..., (n_T - d)/(N + a), w * pi_1, w * pi_2, ...)

with tail weight w = (a + T d)/(N + a) and pi the marginal Pitman-Yor law
with concentration a + T d.
"""

import logging
from typing import Optional

import numpy as np
from scipy.special import entr

from unseen.domain.exceptions import InvalidParamsError
from unseen.domain.models.estimate import EntropyEstimate, EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.predictive import DpymPredictive
from unseen.domain.services.marginal_pyp import DEFAULT_TRUNCATION_N, MarginalPitmanYor

logger = logging.getLogger(__name__)


class DpymModel:
    """Predictive distribution, entropy and sampler of the DPYM."""

    def __init__(self, marginal: Optional[MarginalPitmanYor] = None):
        """
        Initialize the model.

        Args:
            marginal: Marginal Pitman-Yor evaluator for the tail law
        """
        self.marginal = marginal or MarginalPitmanYor()

    def predictive(self, y: FrequencyVector, params: PyParams) -> DpymPredictive:
        """
        Predictive distribution of a new observation given y.

        Args:
            y: Observed frequencies
            params: Hyperparameters

        Returns:
            DpymPredictive

        Raises:
            InvalidParamsError: If N + alpha <= 0
        """
        denominator = y.N + params.alpha
        if denominator <= 0:
            raise InvalidParamsError(f"N + alpha must be positive, got {denominator}")

        head = (y.counts - params.d) / denominator
        head.setflags(write=False)
        tail_weight = (params.alpha + y.T * params.d) / denominator
        return DpymPredictive(
            head=head,
            tail_weight=float(tail_weight),
            tail_params=params.shifted(y.T),
            source=y,
            params=params,
        )

    def head_entropy(self, pred: DpymPredictive) -> float:
        """
        Entropy of the (T+1)-vector (head..., tail_weight).

        Args:
            pred: Predictive distribution

        Returns:
            Entropy in nats
        """
        return float(np.sum(entr(pred.head_vector())))

    def entropy(
        self,
        y: FrequencyVector,
        params: PyParams,
        truncation_n: int = DEFAULT_TRUNCATION_N,
        extend_to_asymptotic: bool = True,
    ) -> EntropyEstimate:
        """
        Entropy of the predictive vector q.

        H(q) = H(q*) + w * H(pi), where the tail entropy reuses the marginal
        Pitman-Yor evaluator at the shifted concentration.

        Args:
            y: Observed frequencies
            params: Hyperparameters
            truncation_n: Truncation index for the tail entropy
            extend_to_asymptotic: Let the tail evaluator grow the truncation index

        Returns:
            EntropyEstimate tagged dpym_fixed
        """
        pred = self.predictive(y, params)
        value = self.head_entropy(pred)

        used_n = truncation_n
        remainder = 0.0
        if pred.tail_weight > 0:
            tail = self.marginal.entropy(
                pred.tail_params, truncation_n, extend_to_asymptotic=extend_to_asymptotic
            )
            value += pred.tail_weight * tail.value
            used_n = tail.truncation_n
            remainder = pred.tail_weight * tail.remainder_bound

        return EntropyEstimate(
            value=value,
            method=EstimatorMethod.DPYM_FIXED,
            params_used=params,
            truncation_n=used_n,
            remainder_bound=remainder,
        )

    def sample(
        self,
        y: FrequencyVector,
        params: PyParams,
        rng: np.random.Generator,
        mass_tol: float,
    ) -> np.ndarray:
        """
        Draw a probability vector from the DPYM posterior.

        (q_1..q_T, q_rest) ~ Dirichlet(n_1 - d, ..., n_T - d, alpha + T d) and the
        rest is split by a stick-breaking PY(d, alpha + T d) draw.

        Args:
            y: Observed frequencies
            params: Hyperparameters
            rng: Random stream owned by the caller
            mass_tol: Residual mass tolerance of the stick-breaking tail

        Returns:
            Weights summing to at least 1 - mass_tol
        """
        shifted = params.shifted(y.T)
        concentration = np.append(y.counts - params.d, shifted.alpha)
        observed = rng.dirichlet(concentration)
        sticks = self.marginal.stick_breaking_sample(shifted, rng, mass_tol)
        return np.concatenate([observed[:-1], observed[-1] * sticks])
