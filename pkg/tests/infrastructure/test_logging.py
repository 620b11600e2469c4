"""
Тесты настройки логирования
"""

import json
import logging
import sys

import pytest

from chiralflow.infrastructure.config import settings as settings_module
from chiralflow.infrastructure.logging import JSONFormatter, StructuredFormatter, setup_logging


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord(
        name="chiralflow.core.services.experiment",
        level=logging.INFO,
        pathname=__file__,
        lineno=1,
        msg="Запуск %s завершён",
        args=("full_propagator",),
        exc_info=None,
    )
    for key, value in extra.items():
        setattr(record, key, value)
    return record


@pytest.fixture
def restore_root():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)


class TestFormatters:
    def test_json(self):
        line = JSONFormatter().format(_record(run_id="r1", extra_fields={"n_switch": 3}))
        payload = json.loads(line)
        assert payload["message"] == "Запуск full_propagator завершён"
        assert payload["level"] == "INFO"
        assert payload["run_id"] == "r1"
        assert payload["n_switch"] == 3

    def test_json_without_run_id(self):
        payload = json.loads(JSONFormatter(enable_run_id=False).format(_record(run_id="r1")))
        assert "run_id" not in payload

    def test_structured(self):
        line = StructuredFormatter().format(_record(run_id="r1"))
        assert "run_id=r1" in line
        assert line.endswith("- Запуск full_propagator завершён")

    def test_exception(self):
        try:
            raise ValueError("сбой")
        except ValueError:
            record = _record(exc_info=sys.exc_info())
        assert "ValueError: сбой" in StructuredFormatter().format(record)


class TestSetupLogging:
    def test_single_stderr_handler(self, restore_root, monkeypatch):
        monkeypatch.setattr(settings_module, "settings", None)
        setup_logging("debug", json_format=True)
        setup_logging("warning", json_format=True)
        assert len(restore_root.handlers) == 1
        handler = restore_root.handlers[0]
        assert handler.stream is sys.stderr
        assert isinstance(handler.formatter, JSONFormatter)
        assert restore_root.level == logging.WARNING

    def test_level_from_settings(self, restore_root, monkeypatch):
        monkeypatch.setenv("CHIRALFLOW_APP_LOG_LEVEL", "ERROR")
        monkeypatch.setattr(settings_module, "settings", None)
        settings_module.init_settings()
        setup_logging()
        assert restore_root.level == logging.ERROR
        assert isinstance(restore_root.handlers[0].formatter, StructuredFormatter)
