"""Finite-blocklength BLER and energy efficiency for FAS-equipped UAV relays."""

from ._fasuav import *  # noqa: F401,F403
from ._fasuav import __version__  # noqa: F401
