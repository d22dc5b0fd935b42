"""Pytest fixtures for unseen tests."""

import logging

import numpy as np
import pytest

from unseen.application.services.estimator_registry import EstimatorRegistry, reset_registry
from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.simulation import (
    EstimatorSpec,
    PopulationKind,
    PopulationSpec,
    ScenarioConfig,
)
from unseen.domain.services.classical import ClassicalEstimators
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.information import InformationService
from unseen.domain.services.marginal_pyp import MarginalPitmanYor
from unseen.domain.services.proposed import ProposedEstimator
from unseen.domain.services.selection import HyperparameterSelector


@pytest.fixture(autouse=True)
def restore_package_logger():
    """Undo CLI logging setup so caplog keeps seeing package records."""
    package_logger = logging.getLogger("unseen")
    handlers = list(package_logger.handlers)
    level, propagate = package_logger.level, package_logger.propagate
    yield
    package_logger.handlers[:] = handlers
    package_logger.setLevel(level)
    package_logger.propagate = propagate


@pytest.fixture
def information():
    """Information-theoretic primitives."""
    return InformationService()


@pytest.fixture
def classical():
    """Classical estimators and coverage plug-ins."""
    return ClassicalEstimators()


@pytest.fixture
def marginal():
    """Marginal Pitman-Yor evaluator."""
    return MarginalPitmanYor()


@pytest.fixture
def dpym(marginal):
    """DPYM model sharing the marginal evaluator."""
    return DpymModel(marginal=marginal)


@pytest.fixture
def selector(classical):
    """Hyperparameter selector."""
    return HyperparameterSelector(classical=classical)


@pytest.fixture
def proposed(selector, dpym):
    """Proposed entropy estimator."""
    return ProposedEstimator(selector=selector, dpym=dpym)


@pytest.fixture
def registry():
    """Fresh estimator registry."""
    reset_registry()
    return EstimatorRegistry()


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def y_211():
    """Counts (2, 1, 1): N=4, T=3, m1=2."""
    return FrequencyVector.from_counts([2, 1, 1])


@pytest.fixture
def y_112():
    """Counts (1, 1, 2): N=4, T=3, m1=2."""
    return FrequencyVector.from_counts([1, 1, 2])


@pytest.fixture
def y_no_singletons():
    """Counts without singletons (large-sample regime)."""
    return FrequencyVector.from_counts([5, 3, 2, 7])


@pytest.fixture
def small_scenario():
    """Tiny scenario that runs in well under a second."""
    return ScenarioConfig(
        id="small",
        population=PopulationSpec(PopulationKind.DIRICHLET_SYMMETRIC, K=50, a=0.5),
        sample_sizes=[10, 40],
        replications=3,
        master_seed=7,
        estimators=[
            EstimatorSpec(EstimatorMethod.MLE),
            EstimatorSpec(EstimatorMethod.MILLER_MADOW),
            EstimatorSpec(EstimatorMethod.PROPOSED),
            EstimatorSpec(EstimatorMethod.DPYM_FIXED, PyParams(0.5, 0.0)),
        ],
    )


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path."""

    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
