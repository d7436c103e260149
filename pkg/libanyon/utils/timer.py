"""
Wall-clock timer for stamping CLI commands in the log.
"""

import time
from datetime import datetime


def timestamp_millisec() -> int:
    return time.time_ns() // 1_000_000


class Timer:
    """Times one interval; usable as a context manager.

    ``tstart`` and ``tend`` are epoch milliseconds; ``timing`` is true
    between :meth:`start` and :meth:`stop`.
    """

    def __init__(self) -> None:
        self.tstart = 0
        self.tend = 0
        self.timing = False

    def __str__(self):
        return f"Time: {self.elapsed:.3f} Start: {self.date_start} End: {self.date_end}"

    @staticmethod
    def _format(stamp: int) -> str:
        return datetime.fromtimestamp(stamp / 1000).strftime("%Y-%m-%d %H:%M:%S") + f".{stamp % 1000:03d}"

    @property
    def date_start(self) -> str:
        return self._format(self.tstart)

    @property
    def date_end(self) -> str:
        return self._format(self.tend)

    @property
    def elapsed(self) -> float:
        """Seconds since start while running, else length of the last interval."""
        end = timestamp_millisec() if self.timing else self.tend
        return (end - self.tstart) / 1000

    def start(self) -> None:
        self.tstart = timestamp_millisec()
        self.timing = True

    def stop(self) -> None:
        self.tend = timestamp_millisec()
        self.timing = False

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, etype, value, traceback):
        self.stop()
