"""
Logging configuration for the fracfront application.
"""

import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path


def _log_dir() -> Path:
    env_dir = os.environ.get('FRACFRONT_LOG_DIR')
    if env_dir:
        return Path(env_dir)
    return Path.home() / '.fracfront' / 'logs'


def setup_logger(name='fracfront'):
    """
    Configure application logging with:
    - Console output on stderr (INFO level)
    - File output with rotation (DEBUG level)
    - Structured log format

    Args:
        name (str): Logger name

    Returns:
        logging.Logger: Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)

    # Avoid adding handlers multiple times
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
    )

    console = logging.StreamHandler()
    console.setLevel(logging.INFO)
    console.setFormatter(formatter)
    logger.addHandler(console)

    try:
        log_dir = _log_dir()
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_dir / 'fracfront.log',
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError:
        # Read-only home (CI sandboxes); console logging still works
        pass

    # Handlers live on each module logger; keep records out of the root logger
    logger.propagate = False
    return logger


def set_console_level(level: int) -> None:
    """Adjust the console handler level of every fracfront logger (used by --verbose)."""
    for name, candidate in logging.Logger.manager.loggerDict.items():
        if not name.startswith('fracfront') or not isinstance(candidate, logging.Logger):
            continue
        for handler in candidate.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)
