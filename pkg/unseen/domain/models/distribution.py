"""Probability vector domain models."""

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from unseen.domain.exceptions import InvalidDistributionError

SUM_TOLERANCE = 1e-12

ArrayLike = Union[Iterable[float], np.ndarray]


def _as_readonly(values: ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=np.float64).ravel()
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False, init=False)
class ExtendedProbabilityVector:
    """
    Probability vector whose entries may be zero.

    Entries are validated once at construction; operations never re-check.
    Entropy evaluation uses the convention 0 * log 0 = 0.

    Attributes:
        probs: Read-only float64 array of probabilities
    """

    probs: np.ndarray = field()

    def __init__(self, probs: ArrayLike):
        object.__setattr__(self, "probs", _as_readonly(probs))
        self._validate()

    def _validate(self) -> None:
        if self.probs.size == 0:
            raise InvalidDistributionError("Probability vector must not be empty")
        if not np.all(np.isfinite(self.probs)):
            raise InvalidDistributionError("Probability vector contains non-finite entries")
        if np.any(self.probs < 0):
            raise InvalidDistributionError("Probability vector contains negative entries")
        total = float(np.sum(self.probs))
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise InvalidDistributionError(
                f"Probabilities must sum to 1 within {SUM_TOLERANCE}, got {total!r}"
            )

    def __len__(self) -> int:
        return int(self.probs.size)

    def __iter__(self):
        return iter(self.probs.tolist())

    def __getitem__(self, index: int) -> float:
        return float(self.probs[index])


class ProbabilityVector(ExtendedProbabilityVector):
    """Probability vector with strictly positive entries (a point of the open simplex)."""

    def _validate(self) -> None:
        super()._validate()
        if np.any(self.probs <= 0):
            raise InvalidDistributionError("Probability vector entries must be strictly positive")

    @classmethod
    def uniform(cls, size: int) -> "ProbabilityVector":
        """
        Create the uniform distribution on `size` symbols.

        Args:
            size: Number of symbols (K)

        Returns:
            ProbabilityVector with every entry 1/size
        """
        if size < 1:
            raise InvalidDistributionError("Uniform distribution needs at least one symbol")
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def from_weights(cls, weights: ArrayLike) -> "ProbabilityVector":
        """
        Normalize nonnegative weights into a probability vector.

        Args:
            weights: Positive weights

        Returns:
            ProbabilityVector proportional to weights
        """
        array = np.asarray(weights, dtype=np.float64)
        total = np.sum(array)
        if not np.isfinite(total) or total <= 0:
            raise InvalidDistributionError("Weights must have a positive finite sum")
        return cls(array / total)
