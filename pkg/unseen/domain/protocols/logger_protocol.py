"""Protocol for simulation run logging services."""

from typing import Any, Dict, List, Optional, Protocol


class IRunLogger(Protocol):
    """
    Protocol for run logging services.

    Lets the simulation runner record lifecycle events and estimator failures
    without depending on a concrete backend.
    """

    def create_session(self, run_id: str, metadata: Dict[str, Any]) -> None:
        """
        Create a new logging session for a scenario run.

        Args:
            run_id: Unique run identifier
            metadata: Run metadata (scenario id, population, task count, ...)
        """
        ...

    def start_session(self, run_id: str) -> None:
        """
        Mark the run as started.

        Args:
            run_id: Run identifier
        """
        ...

    def log(self, run_id: str, level: str, source: str, message: str) -> None:
        """
        Write a log message to the run summary.

        Args:
            run_id: Run identifier
            level: Log level (DEBUG, INFO, WARN, ERROR)
            source: Source identifier (estimator label or SYSTEM)
            message: Log message content
        """
        ...

    def log_error(self, run_id: str, source: str, message: str) -> None:
        """
        Record an estimator failure.

        Args:
            run_id: Run identifier
            source: Cell identifier, e.g. N=100 r=7 proposed
            message: Error description
        """
        ...

    def end_session(self, run_id: str, status: str, duration: float) -> None:
        """
        Finalize a logging session.

        Args:
            run_id: Run identifier
            status: Final status (COMPLETED, FAILED)
            duration: Total run duration in seconds
        """
        ...

    def get_session_path(self, run_id: str) -> str:
        """
        Get the filesystem path for a run's logs.

        Args:
            run_id: Run identifier

        Returns:
            Path to log directory
        """
        ...

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
        ...
