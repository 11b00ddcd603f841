"""
Package logger
"""
import logging
import sys
from typing import Optional

LOGGER_NAME = "dnvflops"
LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def attach_to_log(level: Optional[int] = None, name: str = LOGGER_NAME) -> logging.Logger:
    """Return the package logger, attaching a stderr handler on first use"""
    logger = logging.getLogger(name)
    root = logging.getLogger(LOGGER_NAME)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%H:%M:%S"))
        root.addHandler(handler)
        root.setLevel(logging.WARNING)
        root.propagate = False
    if level is not None:
        root.setLevel(level)
    return logger


def set_log_level(level: str) -> None:
    """Set the package log level from a name such as 'INFO'"""
    attach_to_log(getattr(logging, level.upper(), logging.WARNING))
