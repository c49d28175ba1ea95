"""
Logging configuration for the qtrace forensics toolkit.
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional, TextIO

from src.shared.config import settings


def setup_logging(log_level: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """
    Configure logging for the application.

    Args:
        log_level: Optional log level to override settings
        stream: Console stream, stdout by default. The CLI passes stderr so
            that stdout only carries reports.
    """
    level = log_level or settings.LOG_LEVEL
    numeric_level = getattr(logging, level.upper(), logging.INFO)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    # Remove existing handlers to avoid duplicate logs
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # Create console handler
    console_handler = logging.StreamHandler(stream or sys.stdout)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))
    root_logger.addHandler(console_handler)

    if settings.LOG_FILE:
        try:
            file_handler = RotatingFileHandler(
                filename=settings.LOG_FILE,
                maxBytes=10485760,  # 10MB
                backupCount=10,
            )
            file_handler.setLevel(numeric_level)
            file_handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))
            root_logger.addHandler(file_handler)
        except (OSError, IOError) as e:
            # If we can't create log file, just continue with console logging
            root_logger.warning(f"Could not set up file logging: {str(e)}")

    logging.getLogger("uvicorn").setLevel(logging.WARNING)
    logging.getLogger("uvicorn.error").setLevel(logging.INFO)
    logging.getLogger("fastapi").setLevel(logging.WARNING)

    logging.debug(f"Logging configured at level: {level}")
