from .registry import (
    _CONFIGURATIONS,
    register_configuration,
    clear_configurations,
)
from .loaders import load_file
from .models import SCHEMA_VERSION, AcerlConfig, AdmmConfig, KMeansConfig
from .base import Settings, resolve_settings
from .setup import setup_logging

__all__ = [
    "Settings",
    "_CONFIGURATIONS",
    "register_configuration",
    "clear_configurations",
    "resolve_settings",
    "load_file",
    "setup_logging",
    "SCHEMA_VERSION",
    "AcerlConfig",
    "AdmmConfig",
    "KMeansConfig",
]
