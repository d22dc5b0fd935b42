"""Simulation run session domain models."""

import multiprocessing
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional


class RunStatus(Enum):
    """Simulation run status."""

    PENDING = "PENDING"
    RUNNING = "RUNNING"
    COMPLETED = "COMPLETED"
    FAILED = "FAILED"


class ExecutionMode(Enum):
    """How replications are scheduled."""

    SEQUENTIAL = "sequential"  # One replication at a time
    PARALLEL = "parallel"  # Replications fanned out over a thread pool


@dataclass
class ExecutionConfig:
    """Configuration for the replication worker pool."""

    mode: ExecutionMode = ExecutionMode.PARALLEL
    max_workers: int = field(default_factory=lambda: min(4, multiprocessing.cpu_count()))

    @classmethod
    def with_threads(cls, threads: Optional[int]) -> "ExecutionConfig":
        """
        Build a config from a thread count.

        Args:
            threads: Worker count; None keeps the default, 1 runs sequentially

        Returns:
            ExecutionConfig
        """
        if threads is None:
            return cls()
        if threads < 1:
            raise ValueError(f"Thread count must be >= 1, got {threads}")
        if threads == 1:
            return cls(mode=ExecutionMode.SEQUENTIAL, max_workers=1)
        return cls(mode=ExecutionMode.PARALLEL, max_workers=threads)


@dataclass
class RunSession:
    """
    Lifecycle record of one scenario run.

    Attributes:
        id: Unique run identifier
        scenario_id: Scenario being run
        status: Current status
        task_count: Number of (N, replication) tasks
        start_time: When the run started
        end_time: When the run finished
        failed_cells: Estimator failures recorded so far
    """

    id: str
    scenario_id: str
    status: RunStatus = RunStatus.PENDING
    task_count: int = 0
    start_time: Optional[datetime] = None
    end_time: Optional[datetime] = None
    failed_cells: int = 0

    def start(self) -> None:
        """Mark run as started."""
        self.status = RunStatus.RUNNING
        self.start_time = datetime.now()

    def complete(self) -> None:
        """Mark run as completed."""
        self.status = RunStatus.COMPLETED
        self.end_time = datetime.now()

    def fail(self) -> None:
        """Mark run as failed."""
        self.status = RunStatus.FAILED
        self.end_time = datetime.now()

    def get_duration_seconds(self) -> float:
        """
        Calculate run duration.

        Returns:
            Duration in seconds, or 0 if not started
        """
        if not self.start_time:
            return 0.0
        end = self.end_time or datetime.now()
        return (end - self.start_time).total_seconds()

    def to_dict(self) -> Dict[str, Any]:
        """Serialize session to dictionary."""
        return {
            "id": self.id,
            "scenario_id": self.scenario_id,
            "status": self.status.value,
            "task_count": self.task_count,
            "start_time": self.start_time.isoformat() if self.start_time else None,
            "end_time": self.end_time.isoformat() if self.end_time else None,
            "duration_seconds": self.get_duration_seconds(),
            "failed_cells": self.failed_cells,
        }
