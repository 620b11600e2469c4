"""
Тесты настроек окружения
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from chiralflow.infrastructure.config import settings as settings_module
from chiralflow.infrastructure.config.settings import AppSettings, get_settings, init_settings


@pytest.fixture(autouse=True)
def reset_settings(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(settings_module, "settings", None)


def test_defaults():
    settings = init_settings()
    assert settings.app.log_level == "INFO"
    assert settings.app.json_logs is False
    assert settings.env.output_dir is None


def test_environment(monkeypatch):
    monkeypatch.setenv("CHIRALFLOW_APP_LOG_LEVEL", "debug")
    monkeypatch.setenv("CHIRALFLOW_APP_JSON_LOGS", "true")
    monkeypatch.setenv("CHIRALFLOW_OUTPUT_DIR", "/tmp/flows")
    settings = init_settings()
    assert settings.app.log_level == "DEBUG"
    assert settings.app.json_logs is True
    assert settings.env.output_dir == Path("/tmp/flows")
    assert get_settings() is settings


def test_dotenv_file(tmp_path):
    (tmp_path / ".env").write_text("CHIRALFLOW_OUTPUT_DIR=from_dotenv\n", encoding="utf-8")
    assert init_settings().env.output_dir == Path("from_dotenv")


def test_invalid_log_level():
    with pytest.raises(ValidationError):
        AppSettings(log_level="LOUD")


def test_uninitialized():
    with pytest.raises(RuntimeError):
        get_settings()
