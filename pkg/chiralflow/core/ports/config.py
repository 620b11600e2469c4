"""
Интерфейс для провайдеров конфигурации
"""

from abc import ABC, abstractmethod
from typing import Any, Dict


class AbstractConfigProvider(ABC):
    """
    Абстракция над источниками конфигурации запуска (файлы JSON/YAML)
    """

    @abstractmethod
    def get(self, key: str, default: Any = None) -> Any:
        """
        Получение значения конфигурации

        Args:
            key: Ключ конфигурации (может быть вложенным, например "chain.N")
            default: Значение по умолчанию

        Returns:
            Значение конфигурации
        """
        pass

    @abstractmethod
    def get_all(self) -> Dict[str, Any]:
        """Копия всего дерева конфигурации"""
        pass
