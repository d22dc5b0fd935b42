"""
Application configuration.

Provides centralized configuration management for the library and CLI.
"""

from dataclasses import dataclass, field

from unseen.domain.exceptions import InvalidParamsError
from unseen.domain.models.execution import ExecutionConfig, ExecutionMode
from unseen.domain.models.selection import SelectionConfig
from unseen.domain.services.marginal_pyp import DEFAULT_TRUNCATION_N


@dataclass
class LoggingConfig:
    """Configuration for logging."""

    logs_dir: str = ".logs"
    enable_file_logging: bool = True
    log_level: str = "WARNING"


@dataclass
class EstimationConfig:
    """Configuration for the DPYM-based estimators."""

    truncation_n: int = DEFAULT_TRUNCATION_N
    extend_to_asymptotic: bool = True
    selection: SelectionConfig = field(default_factory=SelectionConfig)

    def __post_init__(self):
        if self.truncation_n < 1:
            raise InvalidParamsError(f"truncation_n must be >= 1, got {self.truncation_n}")


@dataclass
class ApplicationConfig:
    """Main application configuration."""

    logging: LoggingConfig
    estimation: EstimationConfig
    execution: ExecutionConfig
    debug_mode: bool = False

    @classmethod
    def default(cls) -> "ApplicationConfig":
        """
        Create default configuration.

        Returns:
            ApplicationConfig with default values
        """
        return cls(
            logging=LoggingConfig(),
            estimation=EstimationConfig(),
            execution=ExecutionConfig(),
            debug_mode=False,
        )

    @classmethod
    def headless(cls) -> "ApplicationConfig":
        """
        Create configuration for library and test use.

        Returns:
            ApplicationConfig without file logging, running replications in parallel
        """
        return cls(
            logging=LoggingConfig(enable_file_logging=False),
            estimation=EstimationConfig(),
            execution=ExecutionConfig(mode=ExecutionMode.PARALLEL),
            debug_mode=False,
        )
