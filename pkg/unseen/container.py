"""
Dependency Injection Container for unseen.

Provides centralized service instantiation and dependency management.
"""

from dataclasses import dataclass
from typing import Optional

from unseen.application.services.counts_file_service import CountsFileService
from unseen.application.services.curve_service import CurveService
from unseen.application.services.estimator_registry import EstimatorRegistry
from unseen.application.services.population_service import PopulationService
from unseen.application.services.scenario_file_service import ScenarioFileService
from unseen.application.services.simulation_runner import SimulationRunner
from unseen.config import ApplicationConfig
from unseen.domain.models.execution import ExecutionConfig
from unseen.domain.protocols.logger_protocol import IRunLogger
from unseen.domain.services.classical import ClassicalEstimators
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.information import InformationService
from unseen.domain.services.marginal_pyp import MarginalPitmanYor
from unseen.domain.services.proposed import ProposedEstimator
from unseen.domain.services.selection import HyperparameterSelector
from unseen.infrastructure.logging.run_logger import RunLogger


@dataclass
class ServiceContainer:
    """
    Service container holding all application services.

    All services are explicitly wired with their dependencies.
    """

    # Domain services (pure numerics)
    information: InformationService
    classical: ClassicalEstimators
    marginal: MarginalPitmanYor
    dpym: DpymModel
    selector: HyperparameterSelector
    proposed: ProposedEstimator

    # Application services
    estimator_registry: EstimatorRegistry
    population_service: PopulationService
    simulation_runner: SimulationRunner
    curve_service: CurveService
    scenario_file_service: ScenarioFileService
    counts_file_service: CountsFileService

    # Configuration
    config: ApplicationConfig

    # Infrastructure services
    run_logger: Optional[IRunLogger] = None


def create_container(
    config: Optional[ApplicationConfig] = None,
    registry: Optional[EstimatorRegistry] = None,
    execution_config: Optional[ExecutionConfig] = None,
) -> ServiceContainer:
    """
    Create and wire the service container.

    Args:
        config: Application configuration (default: ApplicationConfig.default())
        registry: Optional custom estimator registry (built from the config if None)
        execution_config: Optional worker pool override for simulations

    Returns:
        Fully wired ServiceContainer
    """
    config = config or ApplicationConfig.default()
    if execution_config is not None:
        config.execution = execution_config

    # Domain services (stateless)
    information = InformationService()
    classical = ClassicalEstimators()
    marginal = MarginalPitmanYor()
    dpym = DpymModel(marginal=marginal)
    selector = HyperparameterSelector(classical=classical)
    proposed = ProposedEstimator(selector=selector, dpym=dpym)

    # Infrastructure services
    run_logger: Optional[IRunLogger] = None
    if config.logging.enable_file_logging:
        run_logger = RunLogger(logs_dir=config.logging.logs_dir)

    estimator_registry = registry or EstimatorRegistry(
        classical=classical,
        dpym=dpym,
        proposed=proposed,
        estimation_config=config.estimation,
    )
    population_service = PopulationService()
    simulation_runner = SimulationRunner(
        population_service=population_service,
        registry=estimator_registry,
        information=information,
        execution_config=config.execution,
        run_logger=run_logger,
    )

    return ServiceContainer(
        information=information,
        classical=classical,
        marginal=marginal,
        dpym=dpym,
        selector=selector,
        proposed=proposed,
        estimator_registry=estimator_registry,
        population_service=population_service,
        simulation_runner=simulation_runner,
        curve_service=CurveService(dpym=dpym, selector=selector),
        scenario_file_service=ScenarioFileService(),
        counts_file_service=CountsFileService(),
        config=config,
        run_logger=run_logger,
    )


def create_headless_container() -> ServiceContainer:
    """
    Create a container for library and test use (no file logging).

    Returns:
        ServiceContainer configured for headless mode
    """
    return create_container(ApplicationConfig.headless())
