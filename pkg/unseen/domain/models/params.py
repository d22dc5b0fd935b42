"""Pitman-Yor hyperparameter domain models."""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from unseen.domain.exceptions import InvalidParamsError


@dataclass(frozen=True)
class PyParams:
    """
    Pitman-Yor hyperparameter pair.

    Attributes:
        d: Discount, 0 <= d < 1 (tail heaviness)
        alpha: Concentration, alpha > -d
    """

    d: float
    alpha: float

    def __post_init__(self):
        d = float(self.d)
        alpha = float(self.alpha)
        if not (np.isfinite(d) and np.isfinite(alpha)):
            raise InvalidParamsError(f"Parameters must be finite, got d={d!r}, alpha={alpha!r}")
        if not 0.0 <= d < 1.0:
            raise InvalidParamsError(f"Discount d must satisfy 0 <= d < 1, got {d!r}")
        if not alpha > -d:
            raise InvalidParamsError(f"Concentration must satisfy alpha > -d, got alpha={alpha!r}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "alpha", alpha)

    @property
    def is_geometric(self) -> bool:
        """True when d = 0 and the marginal law is geometric."""
        return self.d == 0.0

    def shifted(self, offset: int) -> "PyParams":
        """
        Move the concentration ladder forward by `offset` steps.

        The products of the marginal pmf started at j = offset + 1 are the
        products of the marginal pmf of PY(d, alpha + offset * d).

        Args:
            offset: Number of ladder steps to skip (T for the DPYM tail)

        Returns:
            PyParams(d, alpha + offset * d)
        """
        return PyParams(self.d, self.alpha + offset * self.d)

    def to_dict(self) -> Dict[str, float]:
        """Serialize to dictionary."""
        return {"d": self.d, "alpha": self.alpha}


@dataclass(frozen=True)
class MpyEntropyResult:
    """
    Entropy of a marginal Pitman-Yor law with truncation diagnostics.

    Attributes:
        value: Entropy in nats
        truncation_n: Truncation index actually used
        remainder_bound: Heuristic magnitude of the neglected remainder
    """

    value: float
    truncation_n: int
    remainder_bound: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "value": self.value,
            "truncation_n": self.truncation_n,
            "remainder_bound": self.remainder_bound,
        }
