"""Console logging setup."""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from unseen.config import LoggingConfig

_HANDLER_NAME = "unseen-console"


def configure_logging(
    config: Optional[LoggingConfig] = None, console: Optional[Console] = None
) -> logging.Logger:
    """
    Route the package loggers to a rich handler on stderr.

    Calling it again replaces the previous handler, so the CLI can be invoked
    repeatedly in one process.

    Args:
        config: Logging configuration (level)
        console: Console to write to (default: stderr)

    Returns:
        The package root logger
    """
    config = config or LoggingConfig()
    root = logging.getLogger("unseen")
    for handler in list(root.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    root.addHandler(handler)
    root.setLevel(config.log_level.upper())
    root.propagate = False
    return root
