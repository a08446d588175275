"""Symplectic representation laboratory."""

from _symplab import *  # noqa: F401,F403
from _symplab import __version__  # noqa: F401
