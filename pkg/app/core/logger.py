import json
import logging
import logging.config
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from app.core.config import settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    """
    Configure application logging.

    Uses the dictConfig file named by ``settings.LOG_CONFIG`` when it exists,
    otherwise a rotating file handler plus a console handler on stderr.

    Args:
        level: Overrides ``settings.LOG_LEVEL`` for the "app" logger.
    """
    level = (level or settings.LOG_LEVEL).upper()

    config_path = Path(settings.LOG_CONFIG) if settings.LOG_CONFIG else None
    if config_path is not None and config_path.exists():
        with open(config_path, "r", encoding="utf-8") as f:
            config = json.load(f)
        for handler in config.get("handlers", {}).values():
            filename = handler.get("filename")
            if filename:
                os.makedirs(os.path.dirname(filename) or ".", exist_ok=True)
        logging.config.dictConfig(config)
    else:
        # Create log directory
        os.makedirs(os.path.dirname(settings.LOG_FILE) or ".", exist_ok=True)
        formatter = logging.Formatter(LOG_FORMAT)

        file_handler = RotatingFileHandler(settings.LOG_FILE, maxBytes=10 * 1024 * 1024, backupCount=5)
        file_handler.setFormatter(formatter)

        # StreamHandler writes to stderr, stdout is reserved for artifacts
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)

        app_logger = logging.getLogger("app")
        app_logger.handlers = [file_handler, console_handler]
        app_logger.propagate = False

    logging.getLogger("app").setLevel(level)


def get_logger(name: str) -> logging.Logger:
    """
    Get a named logger.

    Args:
        name: Logger name, placed under the "app" hierarchy.

    Returns:
        Named logger instance.
    """
    if name == "app" or name.startswith("app."):
        return logging.getLogger(name)
    return logging.getLogger(f"app.{name}")


# Create default application logger
logger = get_logger("app")
