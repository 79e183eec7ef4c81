"""Logging configuration for the geometry toolkit."""
import logging
import sys

import structlog
from structlog.typing import FilteringBoundLogger

from src.config import settings

_configured = False


def _configure() -> None:
    """Configure structlog once per process."""
    global _configured
    if _configured:
        return

    # Set log level from configuration
    log_level = getattr(logging, settings.log_level.upper(), logging.INFO)

    if settings.log_format.lower() == "json":
        renderer = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        # stdout is reserved for reports
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=True,
    )
    _configured = True


def setup_logger(name: str) -> FilteringBoundLogger:
    """
    Configure and return a logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Bound structlog logger carrying the module name
    """
    _configure()
    return structlog.get_logger().bind(logger=name)
