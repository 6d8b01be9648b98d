"""Logging configuration with optional file rotation"""
import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from cli.config import settings


def setup_logging(level: Optional[str] = None):
    """
    Setup logging for a command-line run.

    Console output goes to stderr so report tables on stdout stay clean.
    When log_to_file is enabled, two rotation strategies are supported:
    - size: Rotates when file reaches max_bytes (default: 10MB)
    - time: Rotates daily at midnight
    """
    level_name = (level or settings.log_level).upper()
    log_level = getattr(logging, level_name, logging.INFO)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # Replace handlers from an earlier call, closing any open log file
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()
    root_logger.addHandler(console_handler)

    if settings.log_to_file:
        logs_dir = Path(settings.log_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)
        log_file = logs_dir / "polycdf.log"

        if settings.log_rotation_type == "time":
            file_handler = logging.handlers.TimedRotatingFileHandler(
                log_file,
                when='midnight',
                interval=1,
                backupCount=settings.log_file_backup_count,
                encoding='utf-8',
                utc=False
            )
        else:
            file_handler = logging.handlers.RotatingFileHandler(
                log_file,
                maxBytes=settings.log_file_max_bytes,
                backupCount=settings.log_file_backup_count,
                encoding='utf-8'
            )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)
        root_logger.debug(f"Logging to {log_file} ({settings.log_rotation_type} rotation)")

    # numpy warnings surface through the warnings module, route them here
    logging.captureWarnings(True)

    root_logger.debug(f"Logging initialized: level={level_name}")
    return root_logger
