"""
Logging configuration
=====================

Library modules log below the ``libanyon`` logger and install no handlers,
so importing the package is silent. The command-line front-end calls
:func:`cli_logging_config`, which mirrors messages at or above the stderr
level to standard error and, when a filename has been set, writes the full
log to that file. Standard output is never used for logging so command
reports stay byte-reproducible.
"""

import logging
import sys
from pathlib import Path

from libanyon.utils.timer import Timer


class LogConfig:
    """Class for storing logging configuration info"""

    config = None

    def __init__(self, name: str) -> None:
        LogConfig.config = self
        self.logger_set = False
        self.log_level = logging.INFO
        self.name = name
        self.filename = None
        self.fmt = "[%(command)s]  %(asctime)s %(name)s (%(levelname)s): %(message)s"
        self.stderr_level = logging.CHECK_WARNING

    def set_level(self, level: str) -> None:
        """Set logger level either before or after creating loggers"""
        numeric_level = getattr(logging, str(level).upper(), 10)
        self.log_level = numeric_level
        if self.logger_set:
            logger = logging.getLogger(self.name)
            logger.setLevel(self.log_level)

    def set_stderr_level(self, level: str) -> None:
        """Set logger level for copying messages to stderr"""
        numeric_level = getattr(logging, str(level).upper(), 30)
        self.stderr_level = numeric_level

    def set_directory(self, dirname: str) -> None:
        """Sets target directory to contain the logfile if loggers not yet created"""
        dirname = Path(dirname)
        if not dirname.exists():
            dirname.mkdir(parents=True)
        if self.logger_set:
            logger = logging.getLogger(self.name)
            logger.warning("Cannot set directory after loggers initialized")
        else:
            self.filename = str(dirname / Path(self.filename or "libanyon.log").name)


class CommandFilter(logging.Filter):
    """Logging filter that stamps records with the running CLI command."""

    def __init__(self, command: str):
        super().__init__()
        self.command = command

    def filter(self, record):
        record.command = getattr(record, "command", self.command)
        return True


class ErrorFilter(logging.Filter):
    """Filter to choose messages for stderr of user-defined level"""

    def __init__(self, level):
        super().__init__()
        self.level = level

    def filter(self, record):
        return record.levelno >= self.level


def remove_handlers(logr):
    """Removes all handlers from a logger"""
    for hdl in logr.handlers[:]:
        logr.removeHandler(hdl)
        hdl.close()


def cli_logging_config(command: str = "libanyon", filename: str = None):
    """Install stderr (and optional file) handlers for a CLI command.

    A ``filename`` given here replaces any filename set earlier.
    Returns a callable that logs the command duration; call it when the
    command finishes. Repeated calls (e.g. several commands in one test
    session) replace the handlers so the command stamp stays current.
    """
    cmd_timer = Timer()
    cmd_timer.start()

    logconfig = LogConfig.config
    logger = logging.getLogger(logconfig.name)
    if filename is not None:
        logconfig.filename = str(filename)

    if logconfig.logger_set:
        remove_handlers(logger)

    formatter = logging.Formatter(logconfig.fmt)
    cfilter = CommandFilter(command)
    logger.propagate = False
    logger.setLevel(logconfig.log_level)

    if logconfig.filename:
        fh = logging.FileHandler(logconfig.filename, mode="a")
        fh.addFilter(cfilter)
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    # Mirror check failures and errors to stderr
    fhe = logging.StreamHandler(stream=sys.stderr)
    fhe.addFilter(cfilter)
    fhe.addFilter(ErrorFilter(logconfig.stderr_level))
    fhe.setFormatter(formatter)
    logger.addHandler(fhe)
    logconfig.logger_set = True

    logger.info(f"Starting {command} at: {cmd_timer.date_start}")

    def exit_logger():
        cmd_timer.stop()
        logger.info(f"Exiting {command} at: {cmd_timer.date_end} Time Taken: {cmd_timer.elapsed}")

    return exit_logger
