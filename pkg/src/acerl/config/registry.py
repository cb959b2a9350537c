import logging
from typing import TypeVar, Optional

import pydantic

logger = logging.getLogger(__name__)

_M_type = TypeVar("_M_type", bound=type[pydantic.BaseModel])

_CONFIGURATIONS: dict[str, type[pydantic.BaseModel]] = {}


def _normalize_prefix(prefix: str) -> str:
    prefix = prefix.strip("_").lower()
    return "_".join(prefix.split())


def register_configuration(
        _: Optional[_M_type] = None,
        prefix: Optional[str] = None
) -> _M_type:
    """
    Register a pydantic model as a named configuration section.

    The section becomes a field of the composite settings built by
    :meth:`Settings.load_config` and can be set from the environment as
    ``ACERL_<PREFIX>_<FIELD>``.

    :param prefix: Section name; defaults to the lower-cased class name.
    :raises ValueError: If the prefix is already taken by another model.
    """
    def __wrapper__(model: _M_type):
        assert issubclass(model, pydantic.BaseModel)

        key = _normalize_prefix(prefix or model.__name__)

        if key in _CONFIGURATIONS and _CONFIGURATIONS[key] is not model:
            logger.error("Configuration prefix collision: '%s' already registered for %s",
                         key, _CONFIGURATIONS[key])
            raise ValueError(
                f"Configuration prefix collision: '{key}' "
                f"already registered for {_CONFIGURATIONS[key]}"
            )

        _CONFIGURATIONS[key] = model
        logger.debug("Registered configuration '%s' with prefix '%s'", model.__name__, key)

        return model

    return __wrapper__ if _ is None else __wrapper__(_)


def clear_configurations():
    """Clear all registered configurations."""
    logger.debug("Clearing all registered configurations")
    _CONFIGURATIONS.clear()
