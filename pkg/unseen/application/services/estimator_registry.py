"""
Estimator registry.

Maps method names to estimator callables so the CLI and the simulation
runner can look estimators up by name instead of branching on tags.
"""

from typing import Callable, Dict, List, Optional

from unseen.config import EstimationConfig
from unseen.domain.models.estimate import EntropyEstimate, EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.simulation import EstimatorSpec
from unseen.domain.services.classical import ClassicalEstimators
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.proposed import ProposedEstimator

Estimator = Callable[[FrequencyVector], EntropyEstimate]

# Fixed-parameter DPYM benchmarks registered by default
BENCHMARK_PARAMS = (PyParams(0.0, 1.0), PyParams(0.5, 0.0))


def normalize_method(name: str) -> str:
    """Canonical registry key: lower case with underscores (miller-madow -> miller_madow)."""
    return name.strip().lower().replace("-", "_")


class EstimatorRegistry:
    """
    Registry of entropy estimators.

    Comes with mle, miller_madow, chao_shen, proposed and the fixed DPYM
    benchmarks dpym(d=0,alpha=1) and dpym(d=0.5,alpha=0).
    """

    def __init__(
        self,
        classical: Optional[ClassicalEstimators] = None,
        dpym: Optional[DpymModel] = None,
        proposed: Optional[ProposedEstimator] = None,
        estimation_config: Optional[EstimationConfig] = None,
    ):
        """
        Initialize the registry with the default estimators.

        Args:
            classical: Classical estimator service
            dpym: DPYM entropy evaluator
            proposed: Pitman-Yor entropy estimator
            estimation_config: Truncation and selection settings
        """
        self.classical = classical or ClassicalEstimators()
        self.dpym = dpym or DpymModel()
        self.proposed = proposed or ProposedEstimator(dpym=self.dpym)
        self.config = estimation_config or EstimationConfig()
        self._estimators: Dict[str, Estimator] = {}
        self._register_default_estimators()

    def _register_default_estimators(self) -> None:
        self.register(EstimatorMethod.MLE.value, self.classical.mle_entropy)
        self.register(EstimatorMethod.MILLER_MADOW.value, self.classical.miller_madow_entropy)
        self.register(EstimatorMethod.CHAO_SHEN.value, self.classical.chao_shen_entropy)
        self.register(EstimatorMethod.PROPOSED.value, self._proposed)
        for params in BENCHMARK_PARAMS:
            spec = EstimatorSpec(EstimatorMethod.DPYM_FIXED, params)
            self.register(spec.label, self.fixed_dpym(params))

    def _proposed(self, y: FrequencyVector) -> EntropyEstimate:
        return self.proposed.proposed_entropy(
            y,
            self.config.selection,
            truncation_n=self.config.truncation_n,
            extend_to_asymptotic=self.config.extend_to_asymptotic,
        )

    def fixed_dpym(self, params: PyParams) -> Estimator:
        """
        Build a DPYM estimator at fixed (d, alpha).

        Args:
            params: Hyperparameters

        Returns:
            Estimator callable
        """

        def estimate(y: FrequencyVector) -> EntropyEstimate:
            return self.dpym.entropy(
                y,
                params,
                truncation_n=self.config.truncation_n,
                extend_to_asymptotic=self.config.extend_to_asymptotic,
            )

        return estimate

    def register(self, name: str, estimator: Estimator) -> None:
        """
        Register an estimator.

        Args:
            name: Unique method name
            estimator: Callable mapping a FrequencyVector to an EntropyEstimate

        Raises:
            ValueError: If the name is already registered
            TypeError: If estimator is not callable
        """
        key = normalize_method(name)
        if key in self._estimators:
            raise ValueError(f"Estimator '{name}' is already registered")
        if not callable(estimator):
            raise TypeError("Estimator must be callable")
        self._estimators[key] = estimator

    def unregister(self, name: str) -> None:
        """
        Unregister an estimator.

        Args:
            name: Method name to remove
        """
        self._estimators.pop(normalize_method(name), None)

    def get_estimator(self, name: str) -> Estimator:
        """
        Get an estimator by name.

        Args:
            name: Method name (hyphens and case are ignored)

        Returns:
            Estimator callable

        Raises:
            KeyError: If the name is not registered
        """
        key = normalize_method(name)
        if key not in self._estimators:
            raise KeyError(f"Estimator '{name}' is not registered")
        return self._estimators[key]

    def for_spec(self, spec: EstimatorSpec) -> Estimator:
        """
        Resolve a scenario estimator entry.

        Args:
            spec: Estimator entry; dpym_fixed entries need not be registered

        Returns:
            Estimator callable
        """
        if spec.params is not None:
            return self.fixed_dpym(spec.params)
        return self.get_estimator(spec.method.value)

    def estimate(self, name: str, y: FrequencyVector) -> EntropyEstimate:
        """Run the named estimator on y."""
        return self.get_estimator(name)(y)

    def estimate_all(self, y: FrequencyVector) -> List[EntropyEstimate]:
        """
        Run every registered estimator on y.

        Args:
            y: Observed frequencies

        Returns:
            Estimates in registration order
        """
        return [estimator(y) for estimator in self._estimators.values()]

    def get_all_methods(self) -> List[str]:
        """Registered method names in registration order."""
        return list(self._estimators.keys())

    def is_registered(self, name: str) -> bool:
        """Check if a method name is registered."""
        return normalize_method(name) in self._estimators

    def get_method_count(self) -> int:
        """Number of registered estimators."""
        return len(self._estimators)


# Global registry instance
_global_registry: Optional[EstimatorRegistry] = None


def get_registry() -> EstimatorRegistry:
    """
    Get the global estimator registry instance.

    Returns:
        Global EstimatorRegistry with default settings
    """
    global _global_registry
    if _global_registry is None:
        _global_registry = EstimatorRegistry()
    return _global_registry


def reset_registry() -> None:
    """Reset the global registry (useful for testing)."""
    global _global_registry
    _global_registry = None
