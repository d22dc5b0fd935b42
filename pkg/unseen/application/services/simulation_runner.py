"""
Simulation runner for estimator benchmarks.

Runs every (N, replication) task of a scenario, sequentially or on a thread
pool, and reduces the errors in canonical (N, method, replication) order so
the result does not depend on scheduling.
"""

import logging
import uuid
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from unseen.application.services.estimator_registry import EstimatorRegistry, get_registry
from unseen.application.services.population_service import PopulationService
from unseen.domain.models.execution import ExecutionConfig, ExecutionMode, RunSession
from unseen.domain.models.simulation import ScenarioConfig, SimulationResult, SimulationRow
from unseen.domain.protocols.logger_protocol import IRunLogger
from unseen.domain.services.information import InformationService

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int], None]


def replication_seed(
    master_seed: int, scenario_id: str, N: int, replication: int
) -> np.random.SeedSequence:
    """
    Seed of one replication.

    The scenario id is hashed with CRC-32 and mixed with N and the replication
    index through SeedSequence's spawn key, so streams never depend on
    execution order.

    Args:
        master_seed: Scenario master seed
        scenario_id: Scenario identifier
        N: Sample size
        replication: Replication index

    Returns:
        SeedSequence for the replication
    """
    scenario_key = zlib.crc32(scenario_id.encode("utf-8"))
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(scenario_key, N, replication))


@dataclass
class _TaskOutcome:
    """Errors (estimate - truth) of one replication, None where the estimator raised."""

    errors: List[Optional[float]]
    failures: List[Tuple[str, str]]


class SimulationRunner:
    """
    Runs simulation scenarios.

    Responsible for:
    - Per-replication seeding and population regeneration
    - Evaluating every estimator of the scenario on each sample
    - Recording estimator failures as missing cells
    - Deterministic aggregation into mse, bias and variance
    """

    def __init__(
        self,
        population_service: Optional[PopulationService] = None,
        registry: Optional[EstimatorRegistry] = None,
        information: Optional[InformationService] = None,
        execution_config: Optional[ExecutionConfig] = None,
        run_logger: Optional[IRunLogger] = None,
    ):
        """
        Initialize the runner.

        Args:
            population_service: Population generator and sampler
            registry: Estimator lookup
            information: Entropy of the true populations
            execution_config: Worker pool configuration
            run_logger: Optional file logger for run records
        """
        self.population_service = population_service or PopulationService()
        self.registry = registry or get_registry()
        self.information = information or InformationService()
        self.execution_config = execution_config or ExecutionConfig()
        self.run_logger = run_logger

    def run_scenario(
        self,
        cfg: ScenarioConfig,
        config: Optional[ExecutionConfig] = None,
        on_progress: Optional[ProgressCallback] = None,
    ) -> SimulationResult:
        """
        Run one scenario.

        Args:
            cfg: Scenario configuration
            config: Optional execution config (overrides instance config)
            on_progress: Called with (finished tasks, total tasks) after each task

        Returns:
            SimulationResult with one row per (N, estimator)
        """
        config = config or self.execution_config
        session = RunSession(
            id=str(uuid.uuid4())[:8], scenario_id=cfg.id, task_count=cfg.task_count
        )
        run_id = session.id
        if self.run_logger:
            run_id = self.run_logger_id(session)
            self.run_logger.create_session(
                run_id,
                {
                    "scenario_id": cfg.id,
                    "population": cfg.population.description,
                    "task_count": cfg.task_count,
                    "estimators": [spec.label for spec in cfg.estimators],
                },
            )
            self.run_logger.start_session(run_id)

        session.start()
        logger.info(
            f"Starting scenario {cfg.id}: {cfg.population.description}, "
            f"{len(cfg.sample_sizes)} sample sizes x {cfg.replications} replications, "
            f"mode={config.mode.value}"
        )

        try:
            outcomes = self._run_tasks(cfg, config, on_progress)
        except Exception:
            session.fail()
            if self.run_logger:
                self.run_logger.end_session(run_id, "FAILED", session.get_duration_seconds())
            raise

        result = self._aggregate(cfg, outcomes)
        session.failed_cells = result.failures
        session.complete()

        if self.run_logger:
            for (N, replication), outcome in sorted(outcomes.items()):
                for source, message in outcome.failures:
                    self.run_logger.log_error(run_id, f"N={N} r={replication} {source}", message)
            self.run_logger.end_session(run_id, "COMPLETED", session.get_duration_seconds())

        logger.info(
            f"Scenario {cfg.id} finished in {session.get_duration_seconds():.2f}s "
            f"({result.failures} failed cells)"
        )
        return result

    def run_logger_id(self, session: RunSession) -> str:
        """Directory name of the session's run log."""
        new_run_id = getattr(self.run_logger, "new_run_id", None)
        return new_run_id(session.id) if new_run_id else session.id

    def _run_tasks(
        self,
        cfg: ScenarioConfig,
        config: ExecutionConfig,
        on_progress: Optional[ProgressCallback],
    ) -> Dict[Tuple[int, int], _TaskOutcome]:
        tasks = [(N, r) for N in cfg.sample_sizes for r in range(cfg.replications)]
        outcomes: Dict[Tuple[int, int], _TaskOutcome] = {}

        if config.mode == ExecutionMode.PARALLEL and config.max_workers > 1 and len(tasks) > 1:
            logger.info(
                f"Running {len(tasks)} tasks in parallel (max_workers={config.max_workers})"
            )
            with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
                futures = {
                    executor.submit(self._run_replication, cfg, N, r): (N, r) for N, r in tasks
                }
                for done, (future, key) in enumerate(futures.items(), start=1):
                    outcomes[key] = future.result()
                    if on_progress:
                        on_progress(done, len(tasks))
        else:
            for done, (N, r) in enumerate(tasks, start=1):
                outcomes[(N, r)] = self._run_replication(cfg, N, r)
                if on_progress:
                    on_progress(done, len(tasks))
        return outcomes

    def _run_replication(self, cfg: ScenarioConfig, N: int, replication: int) -> _TaskOutcome:
        """
        Run one replication. Thread-safe: all state is local to the call.

        Args:
            cfg: Scenario configuration
            N: Sample size
            replication: Replication index

        Returns:
            Per-estimator errors and failure messages
        """
        rng = np.random.default_rng(replication_seed(cfg.master_seed, cfg.id, N, replication))
        population = self.population_service.gen_population(cfg.population, rng)
        sample = self.population_service.sample_counts(population, N, rng)
        truth = self.information.shannon_entropy(population)

        errors: List[Optional[float]] = []
        failures: List[Tuple[str, str]] = []
        for spec in cfg.estimators:
            try:
                estimate = self.registry.for_spec(spec)(sample)
                errors.append(estimate.value - truth)
            except Exception as e:
                logger.warning(f"{spec.label} failed at N={N} r={replication}: {e}")
                errors.append(None)
                failures.append((spec.label, f"{type(e).__name__}: {e}"))
        return _TaskOutcome(errors=errors, failures=failures)

    def _aggregate(
        self, cfg: ScenarioConfig, outcomes: Dict[Tuple[int, int], _TaskOutcome]
    ) -> SimulationResult:
        result = SimulationResult()
        for N in cfg.sample_sizes:
            for index, spec in enumerate(cfg.estimators):
                values = [
                    outcomes[(N, r)].errors[index]
                    for r in range(cfg.replications)
                    if outcomes[(N, r)].errors[index] is not None
                ]
                result.failures += cfg.replications - len(values)
                result.rows.append(self._row(cfg, N, spec.label, values))
        return result

    def _row(self, cfg: ScenarioConfig, N: int, method: str, values: List[float]) -> SimulationRow:
        if not values:
            return SimulationRow(cfg.id, N, method, None, None, None, 0, cfg.master_seed)
        errors = np.asarray(values, dtype=np.float64)
        bias = float(np.mean(errors))
        return SimulationRow(
            scenario=cfg.id,
            N=N,
            method=method,
            mse=float(np.mean(errors**2)),
            bias=bias,
            variance=float(np.mean((errors - bias) ** 2)),
            reps=int(errors.size),
            seed=cfg.master_seed,
        )
