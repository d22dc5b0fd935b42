"""Hyperparameter selection domain models."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from unseen.domain.exceptions import InvalidParamsError
from unseen.domain.models.frequency import CoverageEstimates
from unseen.domain.models.params import PyParams


class CandidateLabel(Enum):
    """Where a candidate (d, alpha) came from."""

    INTERIOR_PLUS = "interior_plus"
    INTERIOR_MINUS = "interior_minus"
    BOUNDARY_D0 = "boundary_d0"
    BOUNDARY_D1 = "boundary_d1"
    DEFAULT_LARGE_SAMPLE = "default_large_sample"
    CLAMPED = "clamped"


@dataclass
class SelectionConfig:
    """
    Settings for the hyperparameter selection rule.

    Attributes:
        d0_default: Discount used when there are no singletons
        alpha0_default: Concentration used when there are no singletons
        epsilon_boundary: Offset of the d = 1 - epsilon boundary candidate
        epsilon_clamp: Repair offset when a candidate has alpha <= -d
        literal_boundary: Use (d0_default, 0) instead of (0, alpha_0) as the d = 0 candidate
    """

    d0_default: float = 0.0
    alpha0_default: float = 1e-8
    epsilon_boundary: float = 1e-6
    epsilon_clamp: float = 1e-6
    literal_boundary: bool = False

    def __post_init__(self):
        if not 0.0 <= self.d0_default < 1.0:
            raise InvalidParamsError(f"d0_default must be in [0, 1), got {self.d0_default!r}")
        if self.alpha0_default <= 0:
            raise InvalidParamsError("alpha0_default must be strictly positive")
        if not 0.0 < self.epsilon_boundary < 1.0:
            raise InvalidParamsError("epsilon_boundary must be in (0, 1)")
        if self.epsilon_clamp <= 0:
            raise InvalidParamsError("epsilon_clamp must be strictly positive")

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "d0_default": self.d0_default,
            "alpha0_default": self.alpha0_default,
            "epsilon_boundary": self.epsilon_boundary,
            "epsilon_clamp": self.epsilon_clamp,
            "literal_boundary": self.literal_boundary,
        }


@dataclass(frozen=True)
class Candidate:
    """
    One member of the candidate set.

    Attributes:
        params: Candidate hyperparameters (always inside the PyParams domain)
        label: Origin of the candidate
        objective: Estimated upper bound at params, None for the large-sample default
    """

    params: PyParams
    label: CandidateLabel
    objective: Optional[float] = None

    def with_objective(self, objective: float) -> "Candidate":
        """Return a copy carrying the given objective value."""
        return Candidate(params=self.params, label=self.label, objective=objective)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "label": self.label.value,
            "d": self.params.d,
            "alpha": self.params.alpha,
            "objective": self.objective,
        }


@dataclass
class SelectionDiagnostics:
    """
    Record of a selection run.

    Attributes:
        rule: "large_sample_defaults" or "argmin_candidates"
        chosen: The selected candidate
        candidates: Every evaluated candidate in evaluation order
        coverage: Good-Turing plug-ins, absent under the large-sample rule
        singleton_clamped: True when m1 = N forced the clamp m1' = N - 1
    """

    rule: str
    chosen: Candidate
    candidates: List[Candidate] = field(default_factory=list)
    coverage: Optional[CoverageEstimates] = None
    singleton_clamped: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "rule": self.rule,
            "chosen": self.chosen.to_dict(),
            "candidates": [candidate.to_dict() for candidate in self.candidates],
            "coverage": self.coverage.to_dict() if self.coverage else None,
            "singleton_clamped": self.singleton_clamped,
        }
