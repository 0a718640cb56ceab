"""Plug-in entropy estimates with empirical error certificates."""

from ._entrolab import *  # noqa: F401,F403
