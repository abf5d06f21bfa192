"""Logging configuration shared by every module."""

import logging
import sys

from src.core.config import settings

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"


def configure_logging(level: str = settings.log_level) -> logging.Logger:
    """
    Configure and return the package logger.

    Output goes to stderr only so that CSV/JSON written to stdout stays clean.
    Calling this again only updates the level.
    """
    package_logger = logging.getLogger("exciton")
    if not package_logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        package_logger.addHandler(handler)
        package_logger.propagate = False
    package_logger.setLevel(level.upper())
    return package_logger


logger = configure_logging()
