import logging

from app.core.config import Settings, settings
from app.core.errors import CutRangeError, NumericalError, SizeLimitError, SuperfastQftError
from app.core.logger import get_logger, setup_logging


def test_default_settings():
    assert settings.DENSE_MAX_QUBITS == 14
    assert settings.DENSE_MPO_MAX_QUBITS == 12
    assert settings.DECODE_MAX_QUBITS == 26
    assert settings.SAMPLING_MAX_QUBITS == 20
    assert settings.DEFAULT_CHI == 16
    assert settings.DEFAULT_CUTOFF == 1e-10
    assert settings.QR_ASPECT_RATIO == 4.0


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("DEFAULT_CHI", "8")
    monkeypatch.setenv("TIMING_REPEATS", "2")
    fresh = Settings()
    assert fresh.DEFAULT_CHI == 8
    assert fresh.TIMING_REPEATS == 2


def test_logger_names():
    assert get_logger("tn.zipup").name == "app.tn.zipup"
    assert get_logger("app.cli").name == "app.cli"


def test_setup_logging_without_config_file(monkeypatch, tmp_path):
    log_file = tmp_path / "logs" / "app.log"
    monkeypatch.setattr(settings, "LOG_CONFIG", None)
    monkeypatch.setattr(settings, "LOG_FILE", str(log_file))
    setup_logging("DEBUG")
    app_logger = logging.getLogger("app")
    assert app_logger.level == logging.DEBUG
    get_logger("test").info("hello")
    assert log_file.exists()
    for handler in app_logger.handlers:
        handler.close()
    app_logger.handlers = []
    app_logger.propagate = True


def test_error_hierarchy():
    assert issubclass(SizeLimitError, SuperfastQftError)
    assert issubclass(CutRangeError, ValueError)
    error = NumericalError("SVD failed", attempts=3)
    assert error.attempts == 3
    assert "after 3 attempts" in str(error)
