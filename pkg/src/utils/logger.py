"""
Logging for the poset polytopes toolkit.
One package logger ``src`` with a coloured stderr handler and a rotating file
handler, plus timers for the expensive exact computations (hulls, Ehrhart
interpolation, Groebner checks, sweeps).
"""

import functools
import logging
import logging.handlers
import time
from pathlib import Path
from typing import Optional

from src.utils.config import get_logging_config

DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class ColoredFormatter(logging.Formatter):
    """Custom formatter with colors for console output."""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',    # Cyan
        'INFO': '\033[32m',     # Green
        'WARNING': '\033[33m',  # Yellow
        'ERROR': '\033[31m',    # Red
        'CRITICAL': '\033[35m', # Magenta
    }
    RESET = '\033[0m'

    def format(self, record):
        color = self.COLORS.get(record.levelname)
        if color is None:
            return super().format(record)
        # Colour a copy so the file handler keeps the plain level name
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{color}{record.levelname}{self.RESET}"
        return super().format(record)


def _attach(logger: logging.Logger, handler: logging.Handler,
            formatter: logging.Formatter, level: int) -> None:
    handler.setLevel(level)
    handler.setFormatter(formatter)
    logger.addHandler(handler)


def setup_logging(
    name: str = "src",
    level: Optional[str] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """
    Configure the package logger.

    Every module logs through ``get_logger(__name__)``, so configuring ``src``
    covers the whole library. Rotation size and backup count come from the
    ``logging`` section of the configuration.

    Args:
        name: Logger name
        level: Logging level (config default)
        log_file: Log file path; "" disables the file handler (config default)

    Returns:
        Configured logger instance
    """
    config = get_logging_config()
    numeric = getattr(logging, (level or config.level).upper())
    log_file = log_file if log_file is not None else config.file

    logger = logging.getLogger(name)
    logger.setLevel(numeric)
    logger.handlers.clear()

    # stderr, so JSON written to stdout stays clean
    _attach(logger, logging.StreamHandler(),
            ColoredFormatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s', datefmt=DATE_FORMAT),
            numeric)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        rotating = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=config.max_bytes,
            backupCount=config.backup_count,
            encoding='utf-8'
        )
        _attach(logger, rotating, logging.Formatter(config.format, datefmt=DATE_FORMAT), numeric)

    return logger


def get_logger(name: str = "src") -> logging.Logger:
    return logging.getLogger(name)


class PerformanceLogger:
    """
    Times a block and logs its start and end.

    Blocks logged below INFO (hulls, Ehrhart interpolation) are reported at
    INFO when they take longer than ``logging.slow_seconds``.
    """

    def __init__(self, logger: logging.Logger, operation: str, level: int = logging.INFO):
        self.logger = logger
        self.operation = operation
        self.level = level
        self.started: Optional[float] = None
        self.elapsed: Optional[float] = None

    def __enter__(self):
        self.started = time.perf_counter()
        self.logger.log(self.level, f"Starting {self.operation}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.started is None:
            return
        self.elapsed = time.perf_counter() - self.started
        if exc_type:
            self.logger.error(f"Failed {self.operation} after {self.elapsed:.2f}s: {exc_val}")
            return
        level = self.level
        if level < logging.INFO and self.elapsed >= get_logging_config().slow_seconds:
            level = logging.INFO
        self.logger.log(level, f"Completed {self.operation} in {self.elapsed:.2f}s")


def log_function_call(func):
    """Time every call of ``func`` on its own module's logger."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        with PerformanceLogger(get_logger(func.__module__), f"function {func.__name__}"):
            return func(*args, **kwargs)
    return wrapper


def log_polytope_info(logger: logging.Logger, polytope, name: str = "Polytope") -> None:
    """One debug line with the size of a freshly built lattice polytope."""
    if not logger.isEnabledFor(logging.DEBUG):
        return
    logger.debug(
        f"{name}: d={polytope.d}, {len(polytope.vertices)} vertices, {len(polytope.facets)} facets"
    )
