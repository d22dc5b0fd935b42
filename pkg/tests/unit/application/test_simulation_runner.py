"""Unit tests for SimulationRunner."""

import json

import numpy as np
import pytest

from unseen.application.services.simulation_runner import SimulationRunner, replication_seed
from unseen.domain.models.execution import ExecutionConfig, ExecutionMode
from unseen.infrastructure.logging.run_logger import RunLogger


@pytest.fixture
def runner(registry):
    """Runner on the fresh registry, sequential by default."""
    return SimulationRunner(
        registry=registry,
        execution_config=ExecutionConfig(mode=ExecutionMode.SEQUENTIAL, max_workers=1),
    )


def failing_estimator(y):
    """Estimator that always raises."""
    raise RuntimeError(f"cannot estimate N={y.N}")


class TestReplicationSeed:
    """Tests for per-replication seeding."""

    def test_same_inputs_same_stream(self):
        """Test that seeds are a pure function of their inputs."""
        a = np.random.default_rng(replication_seed(7, "s", 100, 3)).random(4)
        b = np.random.default_rng(replication_seed(7, "s", 100, 3)).random(4)
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize(
        "other", [(8, "s", 100, 3), (7, "t", 100, 3), (7, "s", 101, 3), (7, "s", 100, 4)]
    )
    def test_each_input_changes_stream(self, other):
        """Test that seed, scenario, N and replication all feed the stream."""
        base = np.random.default_rng(replication_seed(7, "s", 100, 3)).random(4)
        changed = np.random.default_rng(replication_seed(*other)).random(4)
        assert not np.array_equal(base, changed)


class TestRunScenario:
    """Tests for run_scenario."""

    def test_rows_in_canonical_order(self, runner, small_scenario):
        """Test one row per (N, estimator) in scenario order."""
        result = runner.run_scenario(small_scenario)

        assert [(row.N, row.method) for row in result.rows] == [
            (N, spec.label) for N in (10, 40) for spec in small_scenario.estimators
        ]
        assert result.failures == 0
        assert all(row.reps == 3 and row.seed == 7 for row in result.rows)

    def test_mse_decomposition(self, runner, small_scenario):
        """Test mse = bias^2 + variance."""
        for row in runner.run_scenario(small_scenario).rows:
            assert row.mse == pytest.approx(row.bias**2 + row.variance, rel=1e-10, abs=1e-15)
            assert row.variance >= 0

    def test_thread_count_does_not_change_results(self, runner, small_scenario):
        """Test that sequential and parallel runs agree exactly."""
        sequential = runner.run_scenario(small_scenario)
        parallel = runner.run_scenario(
            small_scenario, ExecutionConfig(mode=ExecutionMode.PARALLEL, max_workers=4)
        )
        assert sequential.rows == parallel.rows

    def test_repeat_runs_identical(self, runner, small_scenario):
        """Test determinism across repeated runs."""
        assert runner.run_scenario(small_scenario).rows == runner.run_scenario(small_scenario).rows

    def test_progress_callback(self, runner, small_scenario, mocker):
        """Test that progress is reported once per task."""
        on_progress = mocker.Mock()
        runner.run_scenario(small_scenario, on_progress=on_progress)

        assert on_progress.call_count == small_scenario.task_count
        on_progress.assert_called_with(6, 6)

    def test_failures_become_missing_cells(self, registry, small_scenario):
        """Test that an estimator raising on every sample yields an empty row."""
        registry.unregister("mle")
        registry.register("mle", failing_estimator)
        runner = SimulationRunner(registry=registry)

        result = runner.run_scenario(small_scenario)
        row = result.get_row(10, "mle")

        assert row.is_missing
        assert (row.mse, row.bias, row.variance) == (None, None, None)
        assert result.failures == small_scenario.task_count
        assert result.get_row(10, "miller_madow").reps == 3

    def test_failures_are_logged(self, registry, small_scenario, caplog):
        """Test that each failed cell produces a warning."""
        registry.unregister("mle")
        registry.register("mle", failing_estimator)
        runner = SimulationRunner(registry=registry)

        with caplog.at_level("WARNING", logger="unseen"):
            runner.run_scenario(small_scenario)

        assert "mle failed at N=10" in caplog.text

    def test_run_logger_records_session(self, registry, small_scenario, tmp_path):
        """Test the run directory written through the run logger."""
        registry.unregister("mle")
        registry.register("mle", failing_estimator)
        run_logger = RunLogger(str(tmp_path / ".logs"))
        runner = SimulationRunner(registry=registry, run_logger=run_logger)

        runner.run_scenario(small_scenario)

        history = run_logger.get_run_history()
        assert len(history) == 1
        run_dir = tmp_path / ".logs" / history[0]["id"]
        metadata = json.loads((run_dir / "run_metadata.json").read_text())
        assert metadata["status"] == "COMPLETED"
        assert metadata["scenario_id"] == "small"
        assert metadata["failed_cells"] == small_scenario.task_count
        assert "cannot estimate" in (run_dir / "errors.log").read_text()

    def test_unexpected_error_propagates(self, runner, small_scenario, mocker):
        """Test that errors outside estimators propagate."""
        mocker.patch.object(
            runner.population_service, "gen_population", side_effect=RuntimeError("boom")
        )
        with pytest.raises(RuntimeError, match="boom"):
            runner.run_scenario(small_scenario)
