import sys
import threading

from loguru import logger

from src.core.services.logger import setup_exception_handler, setup_root_logger


def test_info_mode_has_no_log_file(tmp_path):
    assert setup_root_logger(debug=False, log_dir=tmp_path) is None
    assert list(tmp_path.iterdir()) == []


def test_debug_mode_writes_log_file(tmp_path):
    path = setup_root_logger(debug=True, log_dir=tmp_path)
    logger.bind(name="DunklHermite.Test").debug("debug line")
    logger.remove()

    assert path == tmp_path / "run_dev.log"
    assert "debug line" in path.read_text(encoding="utf-8")


def test_custom_log_filename(tmp_path):
    path = setup_root_logger(debug=True, log_filename="runs/verify.log", log_dir=tmp_path)
    logger.remove()
    assert path == tmp_path / "runs" / "verify.log"


def test_default_log_dir_follows_environment(tmp_path):
    """conftest points DUNKL_HERMITE_LOGS to tmp_path/logs."""
    path = setup_root_logger(debug=True)
    logger.remove()
    assert path == tmp_path / "logs" / "run_dev.log"


def test_crash_handler_appends_traceback(tmp_path, monkeypatch):
    monkeypatch.setattr(sys, "excepthook", sys.excepthook)
    monkeypatch.setattr(threading, "excepthook", threading.excepthook)
    crash_log = setup_exception_handler(log_dir=tmp_path)

    try:
        raise ValueError("boom")
    except ValueError as e:
        sys.excepthook(type(e), e, e.__traceback__)

    text = crash_log.read_text(encoding="utf-8")
    assert "CRASH DETECTED" in text
    assert "ValueError: boom" in text
