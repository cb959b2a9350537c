import logging
from logging import Logger
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
        name: Optional[str] = "acerl",
        level: int = logging.INFO,
        log_file: Optional[Path] = None
) -> Logger:
    """
    Configure the package logger.

    Without ``log_file`` a console handler is attached when the logger has
    none yet. With ``log_file`` records are also appended to that file;
    the console is left to whatever the root logger does. Calling again
    with the same destination does not add a second handler.

    :param name: Logger name. If None, the root logger.
    :param level: Logging level for the logger and the new handler.
    :param log_file: Optional file receiving a copy of every record.
    :return: The configured logger.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    if log_file is None:
        if not logger.handlers:
            handler = logging.StreamHandler()
            handler.setLevel(level)
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        return logger

    target = Path(log_file).expanduser().resolve()
    for handler in logger.handlers:
        if isinstance(handler, logging.FileHandler) and Path(handler.baseFilename) == target:
            handler.setLevel(level)
            return logger

    target.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(target, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger
