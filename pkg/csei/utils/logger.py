"""
Logging utilities with Rich integration.

Console records go through a RichHandler; the optional log file gets plain
text with the running pipeline stage on every line.
"""

import copy
import logging
import time
from contextlib import contextmanager
from contextvars import ContextVar
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Iterator, Optional, TypeVar, cast

from rich.console import Console
from rich.errors import MarkupError
from rich.logging import RichHandler
from rich.text import Text

F = TypeVar("F", bound=Callable[..., Any])

PACKAGE_LOGGER = "csei"
NO_STAGE = "-"
FILE_FORMAT = "%(asctime)s %(levelname)-8s [%(stage)s] %(name)s: %(message)s"

_current_stage: ContextVar[str] = ContextVar("csei_stage", default=NO_STAGE)


def current_stage() -> str:
    """Name of the stage running in this context, or "-"."""
    return _current_stage.get()


@contextmanager
def stage_context(stage: str) -> Iterator[None]:
    """Attribute log records emitted inside the block to a stage."""
    token = _current_stage.set(stage)
    try:
        yield
    finally:
        _current_stage.reset(token)


class StageFilter(logging.Filter):
    """Stamp every record with the current stage name."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.stage = current_stage()
        return True


class PlainFormatter(logging.Formatter):
    """File formatter that strips Rich markup from messages."""

    def formatMessage(self, record: logging.LogRecord) -> str:
        plain = copy.copy(record)
        try:
            plain.message = Text.from_markup(record.message).plain
        except MarkupError:
            pass
        return super().formatMessage(plain)


def setup_logger(
    name: str = PACKAGE_LOGGER,
    level: str = "INFO",
    log_file: Optional[Path] = None,
    verbose: bool = False,
    console: Optional[Console] = None,
) -> logging.Logger:
    """
    Setup logger with Rich handler and optional file output.

    Args:
        name: Logger name (use "csei" to match package name)
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path to log file (overwritten)
        verbose: Enable debug output with source paths
        console: Rich console to use (stderr console if None)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    log_level = logging.DEBUG if verbose else getattr(logging, level.upper(), logging.INFO)
    logger.setLevel(log_level)
    logger.handlers.clear()

    rich_handler = RichHandler(
        console=console or Console(stderr=True),
        rich_tracebacks=True,
        markup=True,
        show_time=True,
        show_path=verbose,
        omit_repeated_times=False,
        level=log_level,
    )
    rich_handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(rich_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, mode="w", encoding="utf-8")
        file_handler.setLevel(log_level)
        file_handler.addFilter(StageFilter())
        file_handler.setFormatter(PlainFormatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        logger.addHandler(file_handler)

    # Child loggers would otherwise print twice through the root logger
    logger.propagate = False

    return logger


def log_stage(stage: str, logger: Optional[logging.Logger] = None) -> Callable[[F], F]:
    """
    Decorator running a function as a named pipeline stage.

    Records emitted inside carry the stage name, and the stage's duration
    is logged on success and on failure.

    Args:
        stage: Stage name ("ingest", "build", "analyze")
        logger: Logger instance to use (package logger if None)

    Returns:
        Decorator
    """
    log = logger or logging.getLogger(PACKAGE_LOGGER)

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            with stage_context(stage):
                log.info(f"[bold]Stage: {stage}[/bold]")
                start = time.perf_counter()
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    duration = time.perf_counter() - start
                    log.error(f"[red]{stage}[/red] failed after {duration:.2f}s: {e}")
                    raise
                duration = time.perf_counter() - start
                log.info(f"[cyan]{stage}[/cyan] completed in {duration:.2f}s")
                return result

        return cast(F, wrapper)

    return decorator


def get_logger(name: str = PACKAGE_LOGGER) -> logging.Logger:
    """
    Get a logger instance.

    Modules call get_logger(__name__); names like "csei.index.weights"
    inherit the handlers configured on the "csei" logger by setup_logger().

    Args:
        name: Logger name (typically __name__ from the calling module)

    Returns:
        Logger instance that inherits from the package logger
    """
    return logging.getLogger(name)
