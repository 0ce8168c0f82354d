"""Logging module

Provides the logger shared by every dubins_intercept module. Intended to be
re-exported by __init__.py, so external applications can access it as
dubins_intercept.logger. The family scans log from worker threads; all of
them write through this one logger.
"""

import logging
import os
import sys

LEVEL_ENV = "DUBINS_INTERCEPT_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _parse_level(raw: str) -> int | None:
    """Numeric level for an integer string or a level name, None if neither"""
    try:
        return int(raw)
    except ValueError:
        level = getattr(logging, raw.upper(), None)
        return level if isinstance(level, int) else None


def _init_logging() -> logging.Logger:
    """Dubins Intercept logger

    Construct the DubinsIntercept logger writing to stderr. The level is
    WARNING unless the DUBINS_INTERCEPT_LOG_LEVEL environment variable holds
    a numeric level or a level name (CRITICAL, ERROR, WARNING, INFO, DEBUG).

    Returns:
      logging.Logger: The logger object
    """
    logger = logging.getLogger("DubinsIntercept")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.WARNING)

    raw = os.environ.get(LEVEL_ENV)
    if raw is not None:
        level = _parse_level(raw)
        if level is None:
            logger.warning("%s in environment: %s does not correspond to any known logging level", LEVEL_ENV, raw)
        else:
            logger.setLevel(level)
    return logger


def enable_debug() -> None:
    """Switch the package logger to DEBUG, as --debug and debug=True do"""
    logger.setLevel(logging.DEBUG)
    logger.debug("Debug logging enabled")


logger = _init_logging()
