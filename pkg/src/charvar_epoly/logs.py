import logging
import sys

LOGGER_NAME = "charvar_epoly"
LOG_FORMAT = "[%(levelname)s] %(message)s"

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def setup_logging(verbosity: int = 0) -> logging.Logger:
    """
    Configure the package logger and return it.
    - verbosity < 0 -> ERROR only (--quiet)
    - 0 -> WARNING, 1 -> INFO, 2+ -> DEBUG
    Safe to call repeatedly; keeps exactly one stderr handler.
    """
    if verbosity < 0:
        level = logging.ERROR
    else:
        level = _LEVELS.get(verbosity, logging.DEBUG)

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    logger.propagate = False
    for h in list(logger.handlers):
        if getattr(h, "_charvar", False):
            logger.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._charvar = True
    logger.addHandler(handler)
    return logger


def progress_enabled() -> bool:
    """tqdm bars only for an interactive stderr at INFO or chattier."""
    logger = logging.getLogger(LOGGER_NAME)
    return sys.stderr.isatty() and logger.isEnabledFor(logging.INFO)
