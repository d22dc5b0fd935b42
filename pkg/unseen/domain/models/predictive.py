"""DPYM predictive distribution model."""

from dataclasses import dataclass

import numpy as np

from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams


@dataclass(frozen=True, eq=False)
class DpymPredictive:
    """
    Predictive distribution of the Dirichlet-Pitman-Yor mixture.

    The infinite vector q is (head_1..head_T, tail_weight * pi_1, tail_weight * pi_2, ...)
    where pi is the marginal Pitman-Yor law with parameters `tail_params`.

    Attributes:
        head: Read-only array (n_i - d) / (N + alpha)
        tail_weight: (alpha + T d) / (N + alpha)
        tail_params: PyParams(d, alpha + T d) governing the unseen species
        source: Frequency vector the predictive was built from
        params: Hyperparameters used
    """

    head: np.ndarray
    tail_weight: float
    tail_params: PyParams
    source: FrequencyVector
    params: PyParams

    def head_vector(self) -> np.ndarray:
        """Return the (T+1)-vector q* = (head..., tail_weight)."""
        return np.append(self.head, self.tail_weight)

    def probabilities(self, length: int) -> np.ndarray:
        """
        Materialize the first `length` entries of the infinite vector q.

        Args:
            length: Number of entries (at least T)

        Returns:
            Array of head entries followed by tail_weight * pi_k
        """
        # Imported lazily: services depend on models, not the other way around.
        from unseen.domain.services.marginal_pyp import MarginalPitmanYor

        extra = max(0, length - self.head.size)
        if extra == 0:
            return np.array(self.head[:length])
        tail = MarginalPitmanYor().pmf_array(self.tail_params, np.arange(1, extra + 1))
        return np.concatenate([self.head, self.tail_weight * tail])
