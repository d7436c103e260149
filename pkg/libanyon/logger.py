import logging

from libanyon.utils.logs import LogConfig

# Failed axiom, relation, compatibility or solver checks are logged here.
CHECK_WARNING = 35
logging.addLevelName(CHECK_WARNING, "CHECK_WARNING")
logging.CHECK_WARNING = CHECK_WARNING


def check_warning(self, message: str, *args, **kwargs) -> None:
    if self.isEnabledFor(CHECK_WARNING):
        self._log(CHECK_WARNING, message, args, **kwargs)


logging.Logger.check_warning = check_warning
LogConfig(__package__)


def set_level(level: str) -> None:
    """Sets libAnyon logging level"""
    logs = LogConfig.config
    logs.set_level(level)


def get_level() -> int:
    """Returns libAnyon logging level"""
    logs = LogConfig.config
    return logs.log_level


def set_filename(filename: str) -> None:
    """Sets logger filename if loggers not yet created, else None"""
    logs = LogConfig.config
    if logs.logger_set:
        logger = logging.getLogger(logs.name)
        logger.warning("Cannot set filename after loggers initialized")
    else:
        logs.filename = filename


def set_directory(dirname: str) -> None:
    """Sets target directory to contain the logfile if loggers not yet created"""
    logs = LogConfig.config
    logs.set_directory(dirname)


def set_stderr_level(level: str) -> None:
    """Sets logger to mirror certain messages to stderr"""
    logs = LogConfig.config
    logs.set_stderr_level(level)


def get_stderr_level() -> int:
    """Returns libAnyon stderr logging level"""
    logs = LogConfig.config
    return logs.stderr_level
