import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Type

from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    JsonConfigSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from .errors import ConfigurationError


logger = logging.getLogger(__name__)

CONFIG_FILE = ".TomoConfig"


class NumericsSettings(BaseSettings):
    """
    Numerical defaults shared by the library and the CLI.

    Values come from keyword arguments first, then from the JSON file
    `.TomoConfig` in the working directory, then from the defaults below.
    The environment is never consulted.
    """

    tail_tol: float = Field(default=1e-10, gt=0)
    ridge_threshold: float = Field(default=0.05, gt=0, lt=1)
    merge_dx: float = Field(default=0.5, ge=0)
    double_fraction: float = Field(default=0.25, gt=0, le=1)
    theta1_steps: int = Field(default=128, ge=2)
    x1_min: float = -8.0
    x1_max: float = 8.0
    x1_steps: int = Field(default=321, ge=2)
    phi_steps: int = Field(default=256, ge=2)
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(json_file=CONFIG_FILE, extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, JsonConfigSettingsSource(settings_cls))


def _build(settings_cls: Type[NumericsSettings], source: str, **overrides) -> NumericsSettings:
    try:
        return settings_cls(**overrides)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{source} is not valid JSON: {e}") from e


def load_settings(config_path: Optional[Path] = None, **overrides) -> NumericsSettings:
    """
    Load settings, optionally from a JSON file other than `.TomoConfig`.

    An explicit path must exist; an unreadable file of either kind raises
    ConfigurationError.
    """
    if config_path is None:
        return _build(NumericsSettings, CONFIG_FILE, **overrides)

    path = Path(config_path)
    if not path.is_file():
        raise ConfigurationError(f"Config file {path} not found")

    class _FileSettings(NumericsSettings):
        model_config = SettingsConfigDict(json_file=path, extra="ignore")

    loaded = _build(_FileSettings, str(path), **overrides)
    logger.debug(f"📋 Loaded numerics settings from {path}: {loaded.model_dump()}")
    return loaded
