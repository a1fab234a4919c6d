"""Logging configuration for the hyperlat command line.

Library modules only call ``logging.getLogger(__name__)``. The CLI calls
``configure_logging`` once, which attaches a single stderr handler to the
``hyperlat`` logger: a rich console handler for people, or JSON lines for
machines. stdout stays reserved for results.
"""

import json
import logging
import sys
from typing import Any, Dict

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = 'hyperlat'

# LogRecord attributes that are not user-supplied ``extra`` fields.
_RESERVED = frozenset(vars(logging.LogRecord('', 0, '', 0, '', (), None)).keys()) | {'message', 'asctime'}


class JsonLinesFormatter(logging.Formatter):
    """One JSON object per record: level, logger, message and extras."""

    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
        }
        for key, value in vars(record).items():
            if key not in _RESERVED and not key.startswith('_'):
                payload[key] = value
        if record.exc_info:
            payload['exception'] = self.formatException(record.exc_info)
        return json.dumps(payload, sort_keys=True, default=str)


def configure_logging(quiet: bool = False, log_json: bool = False, verbose: bool = False) -> logging.Logger:
    """Installs the stderr handler on the hyperlat logger.

    Args:
        quiet: Only warnings and errors.
        log_json: Emit JSON lines instead of rich console output.
        verbose: Include debug records (ignored when quiet).

    Returns:
        The configured ``hyperlat`` logger.
    """
    logger = logging.getLogger(ROOT_LOGGER)
    if quiet:
        logger.setLevel(logging.WARNING)
    elif verbose:
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.INFO)

    # Prevent duplicate handlers if called multiple times
    if logger.hasHandlers():
        logger.handlers.clear()

    if log_json:
        handler: logging.Handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JsonLinesFormatter())
    else:
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            show_time=False,
            markup=False,
        )
        handler.setFormatter(logging.Formatter('%(message)s'))
    logger.addHandler(handler)
    logger.propagate = False
    return logger
