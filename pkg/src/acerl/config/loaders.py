import json
import logging
from pathlib import Path
from typing import Any, Callable, Optional

import yaml

from ..errors import SchemaError

logger = logging.getLogger(__name__)

_PARSERS: dict[str, Callable[[str], Any]] = {
    ".yaml": yaml.safe_load,
    ".yml": yaml.safe_load,
    ".json": json.loads,
}


def load_file(path: Optional[Path]) -> dict:
    """
    Read a configuration, simulation or plan document.

    Documents are YAML or JSON mappings; an empty file reads as ``{}``.

    :param path: Path to the document.
    :return: The top-level mapping.
    :raises TypeError: If no path is given.
    :raises FileNotFoundError: If the file does not exist.
    :raises IsADirectoryError: If the path is a directory.
    :raises RuntimeError: If the suffix is not a supported format.
    :raises SchemaError: If the text does not parse or is not a mapping.
    """
    if path is None:
        raise TypeError("load_file() needs a path")
    path = Path(path)
    logger.debug("Loading document: %s", path)

    if not path.exists():
        logger.error("Config file not found: %s", path.absolute())
        raise FileNotFoundError(f"Config file not found: {path.absolute()}")
    if path.is_dir():
        logger.error("Path is a directory, not a file: %s", path.absolute())
        raise IsADirectoryError(path.absolute())

    parser = _PARSERS.get(path.suffix.lower())
    if parser is None:
        logger.error("Invalid file type: %s", path.name)
        raise RuntimeError(f"Invalid file type given: {path.name}")

    text = path.read_text(encoding="utf-8")
    if not text.strip():
        logger.debug("Document is empty: %s", path)
        return {}

    try:
        document = parser(text)
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        logger.error("Could not parse %s: %s", path.name, exc)
        raise SchemaError(f"{path.name} is not valid {path.suffix[1:].upper()}: {exc}") from exc

    if document is None:
        return {}
    if not isinstance(document, dict):
        raise SchemaError(f"{path.name} must contain a mapping, got {type(document).__name__}")
    return document
