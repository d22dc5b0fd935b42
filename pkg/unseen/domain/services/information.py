"""
Information-theoretic primitives.

Pure functions of immutable vectors. All quantities are in nats; sums use
numpy's pairwise summation.
"""

from typing import Union

import numpy as np
from scipy.special import entr, xlogy

from unseen.domain.exceptions import InfiniteCrossEntropyError, InvalidDistributionError
from unseen.domain.models.distribution import ExtendedProbabilityVector

KL_TOLERANCE = 1e-10

VectorLike = Union[ExtendedProbabilityVector, np.ndarray]


def _values(vector: VectorLike) -> np.ndarray:
    if isinstance(vector, ExtendedProbabilityVector):
        return vector.probs
    return np.asarray(vector, dtype=np.float64)


class InformationService:
    """Shannon entropy, cross entropy and KL divergence of finite vectors."""

    def shannon_entropy(self, p: ExtendedProbabilityVector) -> float:
        """
        Compute -sum p_i log p_i with 0 log 0 = 0.

        Args:
            p: Validated probability vector

        Returns:
            Entropy in nats
        """
        return float(np.sum(entr(p.probs)))

    def cross_entropy(self, p: ExtendedProbabilityVector, q: VectorLike) -> float:
        """
        Compute -sum p_i log q_i.

        Args:
            p: Validated probability vector
            q: Probabilities for at least every index of p; may be the head
                of an infinite vector and need not sum to 1

        Returns:
            Cross entropy in nats

        Raises:
            InvalidDistributionError: If q is shorter than p or has negative entries
            InfiniteCrossEntropyError: If q_i = 0 where p_i > 0
        """
        p_values = p.probs
        q_values = _values(q)
        if q_values.size < p_values.size:
            raise InvalidDistributionError(
                f"q has {q_values.size} entries but p needs {p_values.size}"
            )
        q_head = q_values[: p_values.size]
        if np.any(q_head < 0) or not np.all(np.isfinite(q_head)):
            raise InvalidDistributionError("q must have finite nonnegative entries")

        impossible = np.flatnonzero((q_head == 0) & (p_values > 0))
        if impossible.size:
            raise InfiniteCrossEntropyError(int(impossible[0]))

        return float(-np.sum(xlogy(p_values, q_head)))

    def kl_divergence(self, p: ExtendedProbabilityVector, q: VectorLike) -> float:
        """
        Compute KL(p || q) as cross_entropy(p, q) - shannon_entropy(p).

        Rounding residue down to -1e-10 is clamped to 0.

        Args:
            p: Validated probability vector
            q: As for cross_entropy

        Returns:
            Divergence in nats
        """
        divergence = self.cross_entropy(p, q) - self.shannon_entropy(p)
        if -KL_TOLERANCE <= divergence < 0:
            return 0.0
        return divergence
