"""Logging configuration."""
import logging
import sys


def setup_logging(service_name: str, level: str = "INFO", json_logs: bool = False) -> logging.Logger:
    """
    Setup standardized logging.

    Handlers are attached to the ``service_name`` logger and to the solver
    package loggers, so ``logging.getLogger(__name__)`` in any module of the
    lab reports through the same handler.

    Args:
        service_name: Name of the application logger
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        json_logs: Whether to emit one JSON object per line

    Returns:
        Configured logger instance
    """
    numeric_level = getattr(logging, level.upper())

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(numeric_level)

    if json_logs:
        formatter = logging.Formatter(
            '{"time":"%(asctime)s","name":"%(name)s","level":"%(levelname)s","message":"%(message)s"}'
        )
    else:
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
    handler.setFormatter(formatter)

    for name in (service_name, *PACKAGE_LOGGERS):
        package_logger = logging.getLogger(name)
        package_logger.setLevel(numeric_level)
        package_logger.handlers.clear()
        package_logger.addHandler(handler)
        package_logger.propagate = False

    return logging.getLogger(service_name)


PACKAGE_LOGGERS = (
    "radial",
    "stationary",
    "chemo",
    "evolution",
    "barrier",
    "diagnostics",
    "harness",
)
