import logging
from pathlib import Path
from typing import Any, Optional, TypeVar

import pydantic
import pydantic_settings as settings
from cachetools import cachedmethod

from .loaders import load_file
from .registry import _CONFIGURATIONS
from ..utils import deep_update

logger = logging.getLogger(__name__)

_P_type = TypeVar("_P_type", bound=pydantic.BaseModel)
_S_type = TypeVar("_S_type", bound="Settings")


class Settings(settings.BaseSettings):
    model_config = settings.SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_nested_delimiter="_",
        env_nested_max_split=1,
        env_prefix="ACERL_",
        cli_avoid_json=True,
        validate_default=True
    )

    _sections: dict = pydantic.PrivateAttr(default_factory=dict)

    @cachedmethod(lambda self: self._sections)
    def get_config(self, config_type: type[_P_type]) -> _P_type:
        for prefix, model in _CONFIGURATIONS.items():
            if model is config_type:
                return getattr(self, prefix)
        raise ValueError(f"Configuration for type {config_type} not found")

    @classmethod
    def composite(cls: type[_S_type]) -> type[_S_type]:
        """Settings subclass with one field per registered section."""
        fields = {
            prefix: pydantic.Field(default_factory=model)
            for prefix, model in _CONFIGURATIONS.items()
        }
        annotations = {prefix: model for prefix, model in _CONFIGURATIONS.items()}

        return type(
            "AcerlSettings",
            (cls,),
            {
                "__annotations__": annotations,
                **fields
            }
        )

    @classmethod
    def load_config(cls: type[_S_type]) -> _S_type:
        """Composite settings populated from the environment and ``.env``."""
        return cls.composite()()


def resolve_settings(
        flags: Optional[dict[str, Any]] = None,
        config_file: Optional[Path] = None
) -> Settings:
    """
    Build the effective settings.

    Precedence, lowest first: model defaults, environment, CLI flags,
    configuration file.

    :param flags: Nested ``{section: {field: value}}`` mapping from the CLI;
        ``None`` values are dropped so unset flags never mask lower layers.
    :param config_file: Optional YAML/JSON document with the same layout.
    :return: Validated composite settings.
    """
    env_config = Settings.load_config()
    merged = env_config.model_dump(exclude_unset=True)

    if flags:
        cleaned = {
            section: {k: v for k, v in values.items() if v is not None}
            for section, values in flags.items()
        }
        deep_update(merged, cleaned)

    if config_file is not None:
        logger.debug("Applying configuration file: %s", config_file)
        deep_update(merged, load_file(config_file) or {})

    resolved = type(env_config).model_validate(merged)
    logger.debug("Resolved settings: %s", resolved.model_dump())
    return resolved
