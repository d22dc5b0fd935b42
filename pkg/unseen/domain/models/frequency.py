"""Frequency vector and coverage domain models."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Union

import numpy as np

from unseen.domain.exceptions import InvalidCountsError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False, init=False)
class FrequencyVector:
    """
    Unlabeled sample: how many individuals were seen of each observed species.

    Attributes:
        counts: Read-only int64 array n_1..n_T, every entry >= 1
        N: Sample size (sum of counts)
        T: Number of observed species
        m1: Number of singletons (counts equal to 1)
        dropped_zeros: Zero entries removed while building from raw counts
    """

    counts: np.ndarray
    N: int
    T: int
    m1: int
    dropped_zeros: int = field(default=0)

    def __init__(self, counts: Union[Iterable[int], np.ndarray], dropped_zeros: int = 0):
        raw = np.asarray(list(counts) if not isinstance(counts, np.ndarray) else counts)
        if raw.size == 0:
            raise InvalidCountsError("Frequency vector needs at least one observed species")
        if raw.dtype.kind == "f":
            if not np.all(np.isfinite(raw)) or np.any(raw != np.round(raw)):
                raise InvalidCountsError("Counts must be integers")
        elif raw.dtype.kind not in "iu":
            raise InvalidCountsError(f"Counts must be integers, got dtype {raw.dtype}")
        array = raw.astype(np.int64).ravel()
        if np.any(array < 1):
            raise InvalidCountsError("Every count in a frequency vector must be >= 1")
        array.setflags(write=False)

        object.__setattr__(self, "counts", array)
        object.__setattr__(self, "N", int(array.sum()))
        object.__setattr__(self, "T", int(array.size))
        object.__setattr__(self, "m1", int(np.count_nonzero(array == 1)))
        object.__setattr__(self, "dropped_zeros", int(dropped_zeros))

    @classmethod
    def from_counts(cls, raw: Union[Iterable[int], np.ndarray]) -> "FrequencyVector":
        """
        Build a frequency vector from raw per-label counts.

        Zero entries denote unobserved labels and are dropped; the number
        dropped is kept in `dropped_zeros` and logged.

        Args:
            raw: Nonnegative integer counts

        Returns:
            FrequencyVector over the positive entries

        Raises:
            InvalidCountsError: On empty, all-zero, negative or non-integer input
        """
        values = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw)
        if values.size == 0:
            raise InvalidCountsError("No counts given")
        if values.dtype.kind == "f" and (
            not np.all(np.isfinite(values)) or np.any(values != np.round(values))
        ):
            raise InvalidCountsError("Counts must be integers")
        if values.dtype.kind not in "iuf":
            raise InvalidCountsError(f"Counts must be integers, got dtype {values.dtype}")
        values = values.astype(np.int64).ravel()
        if np.any(values < 0):
            raise InvalidCountsError("Counts must be nonnegative")

        positive = values[values > 0]
        if positive.size == 0:
            raise InvalidCountsError("All counts are zero")

        dropped = int(values.size - positive.size)
        if dropped:
            logger.warning(f"Dropped {dropped} zero counts (unobserved labels)")
        return cls(positive, dropped_zeros=dropped)

    @property
    def clamped_m1(self) -> int:
        """Singleton count with the all-singletons clamp applied (m1' = N - 1 when m1 = N)."""
        if self.m1 == self.N:
            return self.N - 1
        return self.m1

    def mle_probs(self) -> np.ndarray:
        """Return the plug-in probabilities n_i / N."""
        return self.counts / float(self.N)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "N": self.N,
            "T": self.T,
            "m1": self.m1,
            "dropped_zeros": self.dropped_zeros,
        }


@dataclass(frozen=True)
class CoverageEstimates:
    """
    Good-Turing plug-ins that drive hyperparameter selection.

    Attributes:
        c0_hat: Estimated mass of unseen species
        c1_hat: Estimated mass of singleton species
        c01_hat: c0_hat + c1_hat
        k_hat: Estimated species richness N / (1 - c0_hat), at least N
        f_hat: (c0_hat / 2)(k_hat - T + 1), floored at 0
    """

    c0_hat: float
    c1_hat: float
    c01_hat: float
    k_hat: float
    f_hat: float

    def to_dict(self) -> Dict[str, float]:
        """Serialize to dictionary."""
        return {
            "c0_hat": self.c0_hat,
            "c1_hat": self.c1_hat,
            "c01_hat": self.c01_hat,
            "k_hat": self.k_hat,
            "f_hat": self.f_hat,
        }
