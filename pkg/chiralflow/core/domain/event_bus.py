"""
Синхронный диспетчер доменных событий
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, List

from chiralflow.core.domain.events import DomainEvent

logger = logging.getLogger(__name__)


class EventDispatcher:
    """
    Синхронный диспетчер событий

    Ошибка обработчика логируется и не прерывает расчёт.
    """

    def __init__(self):
        self._handlers: Dict[str, List[Callable]] = defaultdict(list)

    def publish(self, event: DomainEvent) -> None:
        """
        Публикация события

        Args:
            event: Доменное событие
        """
        event_type = event.event_type

        for handler in self._handlers.get(event_type, []) + self._handlers.get("*", []):
            try:
                handler(event)
            except Exception as e:
                logger.error(f"Ошибка в обработчике события {event_type}: {e}", exc_info=True)

    def subscribe(self, event_type: str, handler: Callable) -> None:
        """
        Подписка на тип событий

        Args:
            event_type: Тип события (имя класса) или "*" для всех событий
            handler: Функция-обработчик
        """
        self._handlers[event_type].append(handler)
        logger.debug(f"Добавлен обработчик для {event_type}")
