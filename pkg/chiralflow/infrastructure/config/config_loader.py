"""
ConfigLoader для загрузки конфигурации запуска из JSON/YAML файлов
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from chiralflow.core.domain.errors import ChiralFlowError, ConfigurationError
from chiralflow.core.domain.experiment import RunConfig, SweepSpec
from chiralflow.core.ports.config import AbstractConfigProvider
from chiralflow.infrastructure.config.run_config import RunConfigSchema, SweepSpecSchema

logger = logging.getLogger(__name__)


class ConfigLoader(AbstractConfigProvider):
    """
    Загрузчик конфигурации из YAML/JSON файлов
    Поддерживает вложенные ключи через точку (например, "bath.seed")
    """

    def __init__(self, config_path: Optional[Path] = None, encoding: str = "utf-8"):
        """
        Args:
            config_path: Путь к файлу (JSON или YAML); None даёт пустую конфигурацию
            encoding: Кодировка файла

        Raises:
            ConfigurationError: Файл не найден, не читается или не является объектом
        """
        self.config_path = Path(config_path) if config_path else None
        self.encoding = encoding
        self._config: Dict[str, Any] = {}
        if self.config_path is not None:
            self._load_config()

    def _load_config(self) -> None:
        """Загрузка конфигурации из файла"""
        assert self.config_path is not None
        if not self.config_path.exists():
            raise ConfigurationError(f"Конфигурационный файл не найден: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding=self.encoding) as f:
                if self.config_path.suffix in [".yaml", ".yml"]:
                    data = yaml.safe_load(f) or {}
                elif self.config_path.suffix == ".json":
                    data = json.load(f) or {}
                else:
                    raise ConfigurationError(
                        f"Неподдерживаемый формат файла: {self.config_path.suffix}"
                    )
        except (json.JSONDecodeError, yaml.YAMLError, OSError) as e:
            raise ConfigurationError(f"Ошибка чтения {self.config_path}: {e}") from e

        if not isinstance(data, dict):
            raise ConfigurationError("Корень конфигурации должен быть объектом")
        self._config = data
        logger.info(f"Конфигурация загружена из {self.config_path}")

    def _get_nested_value(self, data: Dict[str, Any], key: str) -> Any:
        value: Any = data
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return None
        return value

    def get(self, key: str, default: Any = None) -> Any:
        """Получение значения конфигурации"""
        value = self._get_nested_value(self._config, key)
        return value if value is not None else default

    def set(self, key: str, value: Any) -> None:
        """Установка значения по вложенному ключу (переопределения CLI)"""
        keys = key.split(".")
        node = self._config
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    def get_all(self) -> Dict[str, Any]:
        """Получение всей конфигурации"""
        return copy.deepcopy(self._config)


def _field_errors(error: ValidationError) -> List[str]:
    return [
        f"{'.'.join(str(part) for part in item['loc']) or '<root>'}: {item['msg']}"
        for item in error.errors()
    ]


def parse_run_config(data: Dict[str, Any]) -> Tuple[RunConfig, Optional[SweepSpecSchema]]:
    """
    Валидация дерева конфигурации

    Returns:
        (RunConfig, встроенная развёртка или None)

    Raises:
        ConfigurationError: С полевыми сообщениями
    """
    try:
        schema = RunConfigSchema.model_validate(data)
        return schema.to_domain(), schema.sweep
    except ValidationError as e:
        errors = _field_errors(e)
        raise ConfigurationError("Конфигурация не прошла валидацию", errors) from e
    except ChiralFlowError as e:
        raise ConfigurationError(f"Недопустимая конфигурация: {e}", [str(e)]) from e


def load_run_config(
    config_path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> Tuple[RunConfig, Optional[SweepSpecSchema]]:
    """
    Загрузка конфигурации с переопределениями

    Args:
        config_path: Файл конфигурации (None: значения по умолчанию)
        overrides: {вложенный ключ: значение}, None-значения пропускаются

    Returns:
        (RunConfig, встроенная развёртка или None)
    """
    loader = ConfigLoader(config_path)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        previous = loader.get(key)
        if previous is not None and previous != value:
            logger.info(f"{key}: значение {previous!r} из файла заменено на {value!r}")
        loader.set(key, value)
    return parse_run_config(loader.get_all())


def load_sweep_spec(
    config_path: Optional[Path] = None,
    data: Optional[Dict[str, Any]] = None,
) -> Tuple[SweepSpec, int]:
    """
    Загрузка описания развёртки из файла или словаря

    Returns:
        (SweepSpec, число воркеров)
    """
    payload = data if data is not None else ConfigLoader(config_path).get_all()
    try:
        schema = SweepSpecSchema.model_validate(payload)
        return schema.to_domain(), schema.workers
    except ValidationError as e:
        raise ConfigurationError("Описание развёртки не прошло валидацию", _field_errors(e)) from e
    except ChiralFlowError as e:
        raise ConfigurationError(f"Недопустимая развёртка: {e}", [str(e)]) from e
