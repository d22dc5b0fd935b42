"""Entropy estimate domain models."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from unseen.domain.exceptions import InvalidParamsError
from unseen.domain.models.params import PyParams
from unseen.domain.models.selection import SelectionDiagnostics


class EstimatorMethod(Enum):
    """Entropy estimator tags."""

    MLE = "mle"
    MILLER_MADOW = "miller_madow"
    CHAO_SHEN = "chao_shen"
    DPYM_FIXED = "dpym_fixed"
    PROPOSED = "proposed"

    @property
    def uses_params(self) -> bool:
        """True for methods that evaluate the DPYM at some (d, alpha)."""
        return self in (EstimatorMethod.DPYM_FIXED, EstimatorMethod.PROPOSED)


@dataclass(frozen=True)
class EntropyEstimate:
    """
    An entropy value in nats with its provenance.

    Values below zero from rounding are clamped to 0.

    Attributes:
        value: Estimated entropy in nats
        method: Estimator that produced it
        params_used: (d, alpha) for DPYM-based methods
        truncation_n: Truncation index of the tail entropy
        remainder_bound: Heuristic remainder of the tail entropy
        selection_diagnostics: Candidate record for the proposed estimator
    """

    value: float
    method: EstimatorMethod
    params_used: Optional[PyParams] = None
    truncation_n: Optional[int] = None
    remainder_bound: Optional[float] = None
    selection_diagnostics: Optional[SelectionDiagnostics] = None

    def __post_init__(self):
        object.__setattr__(self, "value", max(0.0, float(self.value)))
        if self.method.uses_params != (self.params_used is not None):
            raise InvalidParamsError(
                "params_used must be set exactly for DPYM-based methods, "
                f"method={self.method.value}"
            )

    @property
    def label(self) -> str:
        """Display label, e.g. dpym(d=0.5,alpha=0) for fixed benchmarks."""
        if self.method is EstimatorMethod.DPYM_FIXED and self.params_used is not None:
            return f"dpym(d={self.params_used.d:g},alpha={self.params_used.alpha:g})"
        return self.method.value

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "method": self.label,
            "entropy": self.value,
            "params": self.params_used.to_dict() if self.params_used else None,
            "truncation_n": self.truncation_n,
            "remainder_bound": self.remainder_bound,
            "selection": (
                self.selection_diagnostics.to_dict() if self.selection_diagnostics else None
            ),
        }
