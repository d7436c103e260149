#!/usr/bin/env python

"""
Unit test of libanyon log functions.
"""
import logging
import os

from libanyon import logger
from libanyon.utils.logs import LogConfig, cli_logging_config, remove_handlers


def _reset():
    logs = LogConfig.config
    remove_handlers(logging.getLogger(logs.name))
    logs.logger_set = False
    logs.filename = None
    logs.set_level("INFO")
    logs.set_stderr_level("CHECK_WARNING")
    return logs


def test_set_log_level():
    _reset()
    level = logger.get_level()
    assert level == 20, "Log level should be 20. Found: " + str(level)

    logger.set_level("DEBUG")
    level = logger.get_level()
    assert level == 10, "Log level should be 10. Found: " + str(level)

    logger.set_level("CHECK_WARNING")
    level = logger.get_level()
    assert level == 35, "Log level should be 35. Found: " + str(level)

    logger.set_level("ERROR")
    level = logger.get_level()
    assert level == 40, "Log level should be 40. Found: " + str(level)

    logger.set_level("INFO")
    level = logger.get_level()
    assert level == 20, "Log level should be 20. Found: " + str(level)


def test_set_filename(tmp_path):
    logs = _reset()
    assert logs.filename is None, "No log file by default. Found: " + str(logs.filename)

    alt_name = str(tmp_path / "alt_name.log")
    logger.set_filename(alt_name)
    assert logs.filename == alt_name, "Log filename expected " + alt_name + ". Found: " + str(logs.filename)

    exit_logger = cli_logging_config("test")
    logger.set_filename("toolate.log")
    assert logs.filename == alt_name, "Log filename expected " + alt_name + ". Found: " + str(logs.filename)
    exit_logger()

    assert os.path.isfile(alt_name), "Expected creation of file " + alt_name
    with open(alt_name, "r") as f:
        text = f.read()
    assert "[test]" in text and "Starting test at" in text and "Exiting test at" in text
    assert "Cannot set filename after loggers initialized" in text
    _reset()


def test_set_directory(tmp_path):
    logs = _reset()
    logger.set_directory(tmp_path / "logs")
    assert logs.filename == os.path.join(tmp_path, "logs", "libanyon.log")

    cli_logging_config("test")
    logger.set_directory(tmp_path / "toolate")
    assert logs.filename == os.path.join(tmp_path, "logs", "libanyon.log")
    assert os.path.isfile(os.path.join(tmp_path, "logs", "libanyon.log"))
    _reset()


def test_cli_filename_overrides(tmp_path):
    logs = _reset()
    logger.set_filename(str(tmp_path / "first.log"))
    target = tmp_path / "second.log"
    cli_logging_config("jones", filename=target)
    assert logs.filename == str(target)
    logging.getLogger("libanyon.invariants").info("traced")
    assert "traced" in target.read_text() and not (tmp_path / "first.log").exists()
    _reset()


def test_check_warning_level(tmp_path):
    logs = _reset()
    path = tmp_path / "checks.log"
    cli_logging_config("category", filename=path)
    log = logging.getLogger("libanyon.categories.axioms")
    log.check_warning("Pentagon residual 1.0e-3")

    logger.set_level("ERROR")
    log.check_warning("This test message should not log")
    text = path.read_text()
    assert "(CHECK_WARNING): Pentagon residual" in text
    assert "should not log" not in text
    assert logs.log_level == 40
    _reset()


def test_set_stderr_level():
    _reset()
    stderr_level = logger.get_stderr_level()
    assert stderr_level == 35, "Default stderr copying level is 35, found " + str(stderr_level)

    logger.set_stderr_level("DEBUG")
    stderr_level = logger.get_stderr_level()
    assert stderr_level == 10, "Log level should be 10. Found: " + str(stderr_level)

    logger.set_stderr_level("WARNING")
    stderr_level = logger.get_stderr_level()
    assert stderr_level == 30, "Log level should be 30. Found: " + str(stderr_level)

    logger.set_stderr_level("CHECK_WARNING")
    stderr_level = logger.get_stderr_level()
    assert stderr_level == 35, "Log level should be 35. Found: " + str(stderr_level)


if __name__ == "__main__":
    import pathlib
    import tempfile

    test_set_log_level()
    with tempfile.TemporaryDirectory() as d:
        test_set_filename(pathlib.Path(d))
        test_set_directory(pathlib.Path(d))
        test_cli_filename_overrides(pathlib.Path(d))
        test_check_warning_level(pathlib.Path(d))
    test_set_stderr_level()
