"""Logging infrastructure for unseen."""

from unseen.infrastructure.logging.console import configure_logging
from unseen.infrastructure.logging.run_logger import RunLogger

__all__ = ["RunLogger", "configure_logging"]
