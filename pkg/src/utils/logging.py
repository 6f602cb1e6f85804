"""Structured logging configuration."""

import logging
import sys
from typing import Any

import structlog
from structlog.types import EventDict

from ..config import settings


def effective_log_level() -> int:
    """DEBUG when debug mode is on, otherwise the configured level (INFO if unknown)."""
    if settings.debug:
        return logging.DEBUG
    return getattr(logging, settings.log_level.upper(), logging.INFO)


def setup_logging() -> None:
    """Configure structured logging for the toolkit."""

    level = effective_log_level()
    # stdout carries command output, so logs go to stderr
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
    )
    logging.getLogger().setLevel(level)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            add_component,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            # JSON lines for production runs, plain console otherwise
            structlog.processors.JSONRenderer() if settings.environment == "production"
            else structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def add_component(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Tag log entries with the toolkit component (the top-level package below ``src``)."""
    name = event_dict.get("logger") or ""
    parts = name.split(".")
    event_dict["component"] = parts[1] if len(parts) > 1 and parts[0] == "src" else "dqs"
    return event_dict


def bind_run(command: str, **context: Any) -> None:
    """Attach the running command (and any extra context) to every later log entry."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, **context)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a configured logger instance."""
    return structlog.get_logger(name)


# Initialize logging on module import
setup_logging()
