"""Logging configuration for the dominion toolkit."""
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from src.config import settings


def configure_logging(log_file: Optional[Path] = None, level: Optional[str] = None) -> None:
    """
    Route toolkit logs to stderr and, optionally, to a JSON-lines file.

    Reports go to stdout, so no handler ever writes there. The stderr stream
    is looked up on every call; test runners and ``main.run`` swap it. File
    records are serialized so long searches can be audited afterwards.

    Args:
        log_file: Optional path to log file, overriding ``settings.LOG_FILE``
        level: Optional level overriding ``settings.LOG_LEVEL``
    """
    logger.remove()

    log_level = (level or settings.LOG_LEVEL).upper()
    stream = sys.stderr
    logger.add(
        stream,
        level=log_level,
        format=settings.LOG_FORMAT,
        colorize=stream.isatty(),
        backtrace=False,
        diagnose=False,
    )

    file_path = log_file or settings.LOG_FILE
    if file_path:
        logger.add(
            file_path,
            level="DEBUG",
            serialize=True,
            rotation="10 MB",
            retention=5,
            compression="zip",
        )

    logger.debug(f"Logging at {log_level} on stderr" + (f", DEBUG to {file_path}" if file_path else ""))
