"""
File-based logging for simulation runs.

Creates one directory per scenario run in .logs/ holding the run metadata,
a summary log and an error log of failed estimator cells.
"""

import json
import threading
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional


class RunLogger:
    """
    File-based logging service for simulation runs.

    Creates structured log directories with:
    - One directory per run in .logs/<run_id>/
    - run_metadata.json with run details
    - run_summary.log with lifecycle events
    - errors.log with every failed (N, replication, estimator) cell
    - run_registry.json in .logs/ indexing finished runs
    """

    def __init__(self, logs_dir: str = ".logs"):
        """
        Initialize the run logger.

        Args:
            logs_dir: Base directory for log storage (default: .logs)
        """
        self.logs_dir = Path(logs_dir)
        self.current_session: Optional[Dict[str, Any]] = None
        self.registry_file = self.logs_dir / "run_registry.json"
        self._lock = threading.Lock()

        self._setup_logs_directory()
        self.run_registry: List[Dict[str, Any]] = self._load_registry()

    @staticmethod
    def new_run_id(short_id: str) -> str:
        """
        Build a run directory name.

        Args:
            short_id: Unique suffix

        Returns:
            run_<YYYYmmdd_HHMMSS>_<short_id>
        """
        return f"run_{datetime.now().strftime('%Y%m%d_%H%M%S')}_{short_id}"

    def _setup_logs_directory(self) -> None:
        """Create the logs directory if it doesn't exist."""
        self.logs_dir.mkdir(parents=True, exist_ok=True)

        gitignore_path = self.logs_dir / ".gitignore"
        if not gitignore_path.exists():
            gitignore_path.write_text("# Ignore all log files\n*\n!.gitignore\n")

    def _load_registry(self) -> List[Dict[str, Any]]:
        if self.registry_file.exists():
            try:
                return json.loads(self.registry_file.read_text())
            except json.JSONDecodeError:
                return []
        return []

    def _save_registry(self) -> None:
        self.registry_file.write_text(json.dumps(self.run_registry, indent=2))

    def _is_current(self, run_id: str) -> bool:
        return self.current_session is not None and self.current_session["id"] == run_id

    def create_session(self, run_id: str, metadata: Dict[str, Any]) -> None:
        """
        Create a new logging session for a scenario run.

        Args:
            run_id: Unique run identifier
            metadata: Run metadata (scenario id, population, task count, ...)
        """
        run_dir = self.logs_dir / run_id
        run_dir.mkdir(exist_ok=True)

        self.current_session = {
            "id": run_id,
            "status": "INITIALIZING",
            "created_at": datetime.now().isoformat(),
            "started_at": None,
            "ended_at": None,
            "duration_seconds": None,
            "scenario_id": metadata.get("scenario_id", ""),
            "population": metadata.get("population", ""),
            "task_count": metadata.get("task_count", 0),
            "estimators": metadata.get("estimators", []),
            "failed_cells": 0,
            "log_directory": str(run_dir),
        }
        self._save_session_metadata()
        summary_log = run_dir / "run_summary.log"
        self._log_to_file(summary_log, "INFO", "SYSTEM", f"Run {run_id} initialized")

    def start_session(self, run_id: str) -> None:
        """
        Mark the run as started.

        Args:
            run_id: Run identifier
        """
        if not self._is_current(run_id):
            return
        self.current_session["status"] = "RUNNING"
        self.current_session["started_at"] = datetime.now().isoformat()
        self._save_session_metadata()

    def log(self, run_id: str, level: str, source: str, message: str) -> None:
        """
        Write a log message to the run summary.

        Args:
            run_id: Run identifier
            level: Log level (DEBUG, INFO, WARN, ERROR)
            source: Source identifier (estimator label or SYSTEM)
            message: Log message content
        """
        if not self._is_current(run_id):
            return
        run_dir = Path(self.current_session["log_directory"])
        self._log_to_file(run_dir / "run_summary.log", level, source, message)

    def log_error(self, run_id: str, source: str, message: str) -> None:
        """
        Record an estimator failure; safe to call from worker threads.

        Args:
            run_id: Run identifier
            source: Cell identifier, e.g. N=100 r=7 proposed
            message: Error description
        """
        if not self._is_current(run_id):
            return
        run_dir = Path(self.current_session["log_directory"])
        with self._lock:
            self.current_session["failed_cells"] += 1
            self._log_to_file(run_dir / "errors.log", "ERROR", source, message)

    def end_session(self, run_id: str, status: str, duration: float) -> None:
        """
        Finalize a logging session.

        Args:
            run_id: Run identifier
            status: Final status (COMPLETED, FAILED)
            duration: Total run duration in seconds
        """
        if not self._is_current(run_id):
            return

        self.current_session["status"] = status
        self.current_session["ended_at"] = datetime.now().isoformat()
        self.current_session["duration_seconds"] = duration
        self._save_session_metadata()

        self.run_registry.append(self.current_session.copy())
        self._save_registry()

        run_dir = Path(self.current_session["log_directory"])
        self._log_to_file(
            run_dir / "run_summary.log",
            "INFO",
            "SYSTEM",
            f"Run {run_id} {status} (Duration: {duration:.2f}s, "
            f"failed cells: {self.current_session['failed_cells']})",
        )
        self.current_session = None

    def get_session_path(self, run_id: str) -> str:
        """
        Get the filesystem path for a run's logs.

        Args:
            run_id: Run identifier

        Returns:
            Path to log directory
        """
        return str(self.logs_dir / run_id)

    def get_run_history(
        self, limit: Optional[int] = None, status_filter: Optional[str] = None
    ) -> List[Dict[str, Any]]:
        """
        Retrieve finished runs, most recent first.

        Args:
            limit: Maximum number of runs to return
            status_filter: Filter by run status

        Returns:
            List of run metadata dictionaries
        """
        history = self.run_registry.copy()
        if status_filter:
            history = [run for run in history if run["status"] == status_filter]
        history.sort(key=lambda run: run["created_at"], reverse=True)
        if limit:
            history = history[:limit]
        return history

    def _log_to_file(self, file_path: Path, level: str, source: str, message: str) -> None:
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]
        with open(file_path, "a") as f:
            f.write(f"[{timestamp}] [{level}] [{source}] {message}\n")

    def _save_session_metadata(self) -> None:
        if not self.current_session:
            return
        metadata_file = Path(self.current_session["log_directory"]) / "run_metadata.json"
        metadata_file.write_text(json.dumps(self.current_session, indent=2))
