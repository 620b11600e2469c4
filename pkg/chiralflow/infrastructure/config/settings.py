"""
Настройки окружения с валидацией через Pydantic
"""

from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class AppSettings(BaseSettings):
    """Настройки логирования"""

    log_level: str = Field(default="INFO", description="Уровень логирования")
    json_logs: bool = Field(default=False, description="Логи в формате JSON")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Валидация уровня логирования"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"log_level должен быть одним из: {valid_levels}")
        return v.upper()

    model_config = SettingsConfigDict(env_prefix="CHIRALFLOW_APP_", extra="ignore")


class EnvironmentOverrides(BaseSettings):
    """Переопределения из окружения: только каталог вывода"""

    output_dir: Optional[Path] = Field(default=None, description="Каталог артефактов")

    model_config = SettingsConfigDict(
        env_prefix="CHIRALFLOW_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class Settings(BaseSettings):
    """Корневой класс настроек процесса"""

    app: AppSettings = Field(default_factory=AppSettings)
    env: EnvironmentOverrides = Field(default_factory=EnvironmentOverrides)

    model_config = SettingsConfigDict(extra="ignore")


# Глобальный экземпляр настроек (инициализируется в main)
settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Получение глобальных настроек

    Raises:
        RuntimeError: Если настройки не инициализированы
    """
    if settings is None:
        raise RuntimeError("Настройки не инициализированы. Вызовите init_settings()")
    return settings


def init_settings() -> Settings:
    """Инициализация настроек из окружения и .env"""
    global settings
    settings = Settings()
    return settings
