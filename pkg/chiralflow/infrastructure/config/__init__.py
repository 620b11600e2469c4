"""
Конфигурация: настройки окружения, схемы запуска, загрузчик файлов
"""

from chiralflow.infrastructure.config.config_loader import (
    ConfigLoader,
    load_run_config,
    load_sweep_spec,
    parse_run_config,
)
from chiralflow.infrastructure.config.run_config import RunConfigSchema, SweepSpecSchema
from chiralflow.infrastructure.config.settings import (
    AppSettings,
    EnvironmentOverrides,
    Settings,
    get_settings,
    init_settings,
)

__all__ = [
    "AppSettings",
    "ConfigLoader",
    "EnvironmentOverrides",
    "RunConfigSchema",
    "Settings",
    "SweepSpecSchema",
    "get_settings",
    "init_settings",
    "load_run_config",
    "load_sweep_spec",
    "parse_run_config",
]
