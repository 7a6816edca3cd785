# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Logging configuration."""

import logging
import sys

from .config import config


def setup_logger(name: str, level: str | None = None) -> logging.Logger:
    """
    Set up a logger with consistent formatting.

    Log records go to stderr; stdout is reserved for rendered reports.

    Args:
        name: Logger name (typically __name__)
        level: Optional log level override (DEBUG, INFO, WARNING, ERROR)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Set level
    log_level = level or config.LOG_LEVEL
    logger.setLevel(getattr(logging, log_level.upper()))

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter(config.LOG_FORMAT)
    handler.setFormatter(formatter)

    logger.addHandler(handler)
    logger.propagate = False

    return logger


def set_package_level(level: str) -> None:
    """
    Change the level of every logger created by setup_logger in this package.

    Args:
        level: Log level name (DEBUG, INFO, WARNING, ERROR)
    """
    package = __name__.split(".")[0]
    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and name.startswith(package):
            logger.setLevel(getattr(logging, level.upper()))
