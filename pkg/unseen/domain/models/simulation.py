"""Simulation harness domain models."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from unseen.domain.exceptions import InvalidParamsError, ScenarioConfigError
from unseen.domain.models.distribution import ProbabilityVector
from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams


class PopulationKind(Enum):
    """Population generator families."""

    DIRICHLET_SYMMETRIC = "dirichlet_symmetric"
    DIRICHLET_MIXED = "dirichlet_mixed"
    ZIPF = "zipf"


@dataclass(frozen=True)
class PopulationSpec:
    """
    How to generate a true probability vector.

    Attributes:
        kind: Generator family
        K: Number of species
        a: Dirichlet parameter (dirichlet_symmetric)
        a_low: Parameter of the first ceil(K/2) coordinates (dirichlet_mixed)
        a_high: Parameter of the remaining coordinates (dirichlet_mixed)
        s: Zipf exponent; s = 0 gives the uniform distribution
    """

    kind: PopulationKind
    K: int
    a: Optional[float] = None
    a_low: Optional[float] = None
    a_high: Optional[float] = None
    s: Optional[float] = None

    def __post_init__(self):
        if self.K < 1:
            raise ScenarioConfigError(f"Population size K must be >= 1, got {self.K}")
        if self.kind is PopulationKind.DIRICHLET_SYMMETRIC:
            self._require_positive("a", self.a)
        elif self.kind is PopulationKind.DIRICHLET_MIXED:
            self._require_positive("a_low", self.a_low)
            self._require_positive("a_high", self.a_high)
        elif self.s is None or not math.isfinite(self.s) or self.s < 0:
            raise ScenarioConfigError(f"Zipf exponent s must be >= 0, got {self.s!r}")

    def _require_positive(self, name: str, value: Optional[float]) -> None:
        if value is None or not math.isfinite(value) or value <= 0:
            raise ScenarioConfigError(f"{self.kind.value} needs {name} > 0, got {value!r}")

    @property
    def description(self) -> str:
        """Short human-readable form, e.g. dirichlet_symmetric(a=0.1),K=5000."""
        if self.kind is PopulationKind.DIRICHLET_SYMMETRIC:
            detail = f"a={self.a:g}"
        elif self.kind is PopulationKind.DIRICHLET_MIXED:
            detail = f"a_low={self.a_low:g},a_high={self.a_high:g}"
        else:
            detail = f"s={self.s:g}"
        return f"{self.kind.value}({detail}),K={self.K}"

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to dictionary (only the fields the kind uses)."""
        data: Dict[str, Any] = {"kind": self.kind.value, "K": self.K}
        if self.kind is PopulationKind.DIRICHLET_SYMMETRIC:
            data["a"] = self.a
        elif self.kind is PopulationKind.DIRICHLET_MIXED:
            data["a_low"] = self.a_low
            data["a_high"] = self.a_high
        else:
            data["s"] = self.s
        return data


@dataclass(frozen=True)
class EstimatorSpec:
    """
    An estimator entry of a scenario.

    Attributes:
        method: Estimator tag
        params: Fixed (d, alpha) for dpym_fixed, None otherwise
    """

    method: EstimatorMethod
    params: Optional[PyParams] = None

    def __post_init__(self):
        if (self.method is EstimatorMethod.DPYM_FIXED) != (self.params is not None):
            raise ScenarioConfigError("Fixed parameters are required exactly for dpym_fixed")

    @property
    def label(self) -> str:
        """Column label used in results, e.g. dpym(d=0.5,alpha=0)."""
        if self.params is not None:
            return f"dpym(d={self.params.d:g},alpha={self.params.alpha:g})"
        return self.method.value

    def to_dict(self) -> Any:
        """Serialize to the scenario document form."""
        if self.params is None:
            return self.method.value
        return {"method": self.method.value, "d": self.params.d, "alpha": self.params.alpha}


@dataclass(frozen=True)
class ScenarioConfig:
    """
    One simulation scenario.

    Attributes:
        id: Scenario identifier (appears in the results and in seed derivation)
        population: True-distribution generator
        sample_sizes: Sample sizes N to evaluate
        replications: Replications per sample size
        master_seed: Seed all per-replication streams derive from
        estimators: Estimators to compare
    """

    id: str
    population: PopulationSpec
    sample_sizes: List[int]
    replications: int
    master_seed: int
    estimators: List[EstimatorSpec]

    def __post_init__(self):
        if not self.id:
            raise ScenarioConfigError("Scenario id must not be empty")
        if not self.sample_sizes:
            raise ScenarioConfigError(f"Scenario {self.id}: sample_sizes must not be empty")
        if any(n < 1 for n in self.sample_sizes):
            raise ScenarioConfigError(f"Scenario {self.id}: sample sizes must be >= 1")
        if self.replications < 1:
            raise ScenarioConfigError(f"Scenario {self.id}: replications must be >= 1")
        if not self.estimators:
            raise ScenarioConfigError(f"Scenario {self.id}: estimators must not be empty")
        if not 0 <= self.master_seed < 2**64:
            raise ScenarioConfigError(f"Scenario {self.id}: master_seed must be a 64-bit integer")
        labels = [spec.label for spec in self.estimators]
        if len(set(labels)) != len(labels):
            raise ScenarioConfigError(f"Scenario {self.id}: duplicate estimators {labels}")

    @property
    def task_count(self) -> int:
        """Number of (N, replication) tasks."""
        return len(self.sample_sizes) * self.replications

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to the scenario document form."""
        return {
            "id": self.id,
            "population": self.population.to_dict(),
            "sample_sizes": list(self.sample_sizes),
            "replications": self.replications,
            "master_seed": self.master_seed,
            "estimators": [spec.to_dict() for spec in self.estimators],
        }


@dataclass(frozen=True, eq=False)
class LabeledSample:
    """
    A sample that still knows which species were drawn.

    Estimators only ever see `frequencies`; the labeled view backs the
    upper-bound checks and the KL curves, which need the true unseen masses.

    Attributes:
        population: True probability vector p
        counts: Per-species counts aligned with p (zeros for unseen species)
        frequencies: Unlabeled view over the observed species, in species order
    """

    population: ProbabilityVector
    counts: np.ndarray
    frequencies: FrequencyVector

    def __post_init__(self):
        if self.counts.shape != self.population.probs.shape:
            raise InvalidParamsError("Counts must align with the population vector")

    @property
    def K(self) -> int:
        """Number of species in the population."""
        return len(self.population)

    @property
    def true_c0(self) -> float:
        """Total probability of species with no observation."""
        return float(np.sum(self.population.probs[self.counts == 0]))

    @property
    def true_c1(self) -> float:
        """Total probability of species observed exactly once."""
        return float(np.sum(self.population.probs[self.counts == 1]))

    def aligned_order(self) -> np.ndarray:
        """
        Species order matching the DPYM vector q.

        Observed species come first in frequency-vector order, followed by the
        unobserved species sorted by decreasing probability.
        """
        observed = np.flatnonzero(self.counts > 0)
        unobserved = np.flatnonzero(self.counts == 0)
        by_mass = np.argsort(-self.population.probs[unobserved], kind="stable")
        return np.concatenate([observed, unobserved[by_mass]])

    def aligned_probs(self) -> np.ndarray:
        """Return p permuted into `aligned_order`."""
        return self.population.probs[self.aligned_order()]


@dataclass(frozen=True)
class SimulationRow:
    """
    Aggregated error of one estimator at one sample size.

    Error statistics are None when every replication of the cell failed.

    Attributes:
        scenario: Scenario id
        N: Sample size
        method: Estimator label
        mse: Mean of squared errors
        bias: Mean error
        variance: Population variance of the errors
        reps: Replications that produced a value
        seed: Scenario master seed
    """

    scenario: str
    N: int
    method: str
    mse: Optional[float]
    bias: Optional[float]
    variance: Optional[float]
    reps: int
    seed: int

    @property
    def is_missing(self) -> bool:
        """True when no replication produced a value."""
        return self.reps == 0


@dataclass
class SimulationResult:
    """
    Output of a scenario run.

    Attributes:
        rows: One row per (N, method) in canonical order
        failures: Count of (N, method, replication) cells that raised
    """

    rows: List[SimulationRow] = field(default_factory=list)
    failures: int = 0

    def get_row(self, N: int, method: str) -> Optional[SimulationRow]:
        """
        Look up a row.

        Args:
            N: Sample size
            method: Estimator label

        Returns:
            Matching row or None
        """
        for row in self.rows:
            if row.N == N and row.method == method:
                return row
        return None

    def extend(self, other: "SimulationResult") -> None:
        """Append the rows and failures of another result."""
        self.rows.extend(other.rows)
        self.failures += other.failures
