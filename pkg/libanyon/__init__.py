"""
libAnyon
========

Braid-group representations built from modular tensor category data, the
link invariants they encode, and the contextuality of the measurement
statistics they induce.
"""

from .version import __version__

__author__ = "libAnyon developers"

from libanyon import logger
