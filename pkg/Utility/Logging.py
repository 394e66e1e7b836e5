import logging

import structlog

_LEVELS = {"CRITICAL": logging.CRITICAL,
           "ERROR": logging.ERROR,
           "WARNING": logging.WARNING,
           "INFO": logging.INFO,
           "DEBUG": logging.DEBUG}


def configure_logging(level="INFO", json=False):
    """
    Set up structlog once for the whole process.

    Args:
        level (str): minimum level that gets rendered.
        json (bool): render one JSON object per line instead of the console format.
    """
    if level.upper() not in _LEVELS:
        raise ValueError("unknown log level: {}".format(level))
    renderer = structlog.processors.JSONRenderer() if json else structlog.dev.ConsoleRenderer(colors=False)
    structlog.configure(
        processors=[structlog.contextvars.merge_contextvars,
                    structlog.processors.add_log_level,
                    structlog.processors.TimeStamper(fmt="iso"),
                    structlog.processors.StackInfoRenderer(),
                    structlog.processors.format_exc_info,
                    renderer],
        wrapper_class=structlog.make_filtering_bound_logger(_LEVELS[level.upper()]),
        cache_logger_on_first_use=False)
