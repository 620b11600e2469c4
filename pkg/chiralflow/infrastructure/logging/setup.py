"""
Настройка логирования симулятора
"""

import json
import logging
import sys
from typing import Optional

from chiralflow.infrastructure.config.settings import get_settings


def setup_logging(
    log_level: Optional[str] = None,
    json_format: Optional[bool] = None,
    enable_run_id: bool = True,
) -> None:
    """
    Настройка логирования для приложения

    Вывод идёт в stderr, stdout остаётся для таблиц.

    Args:
        log_level: Уровень логирования (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: Если True, логи в формате JSON
        enable_run_id: Если True, добавляет run_id в логи
    """
    try:
        app = get_settings().app
        log_level = log_level or app.log_level
        json_format = app.json_logs if json_format is None else json_format
    except RuntimeError:
        log_level = log_level or "INFO"

    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    if json_format:
        formatter: logging.Formatter = JSONFormatter(enable_run_id=enable_run_id)
    else:
        formatter = StructuredFormatter(enable_run_id=enable_run_id)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)


def _record_payload(formatter: logging.Formatter, record: logging.LogRecord, run_id: bool) -> dict:
    log_data = {
        "timestamp": formatter.formatTime(record, formatter.datefmt),
        "level": record.levelname,
        "logger": record.name,
        "message": record.getMessage(),
    }
    if run_id and hasattr(record, "run_id"):
        log_data["run_id"] = record.run_id
    if record.exc_info:
        log_data["exception"] = formatter.formatException(record.exc_info)
    if hasattr(record, "extra_fields"):
        log_data.update(record.extra_fields)
    return log_data


class StructuredFormatter(logging.Formatter):
    """Структурированный форматтер для логов"""

    def __init__(self, enable_run_id: bool = True):
        super().__init__()
        self.enable_run_id = enable_run_id

    def format(self, record: logging.LogRecord) -> str:
        """Форматирование записи лога"""
        log_data = _record_payload(self, record, self.enable_run_id)

        parts = [
            f"[{log_data['timestamp']}]",
            f"{log_data['level']:8s}",
            f"{log_data['logger']:40s}",
            f"- {log_data['message']}",
        ]
        if "run_id" in log_data:
            parts.insert(1, f"run_id={log_data['run_id']}")
        if "exception" in log_data:
            parts.append("\n" + log_data["exception"])

        return " ".join(parts)


class JSONFormatter(logging.Formatter):
    """JSON форматтер для логов (одна запись на строку)"""

    def __init__(self, enable_run_id: bool = True):
        super().__init__()
        self.enable_run_id = enable_run_id

    def format(self, record: logging.LogRecord) -> str:
        """Форматирование записи лога в JSON"""
        return json.dumps(_record_payload(self, record, self.enable_run_id), ensure_ascii=False)
